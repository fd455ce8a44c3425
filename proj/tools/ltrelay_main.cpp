#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ltrelay/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ltrelay — two-hop rateless-relay Monte-Carlo simulator"};
  app.option_defaults()->always_capture_default();

  ltrelay::ExperimentConfig cfg;
  std::string strategy = "pdf";
  std::string source_encoder = "amicable";
  std::string relay_encoder = "mblte";

  app.add_option("--k", cfg.sim.k, "Source symbols per block")->check(CLI::PositiveNumber);
  app.add_option("--c", cfg.sim.c, "Robust soliton parameter c")->check(CLI::PositiveNumber);
  app.add_option("--delta", cfg.sim.delta, "Robust soliton decoding-failure bound");
  app.add_option("--eps-sr", cfg.sim.eps_sr, "Source->relay erasure probability")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--eps-rd", cfg.sim.eps_rd, "Relay->destination erasure probability")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--strategy", strategy, "Relaying strategy")
      ->check(CLI::IsMember({"single", "df", "pdf"}));
  app.add_option("--source-encoder", source_encoder, "Encoder variant at the source")
      ->check(CLI::IsMember({"plain", "mblte", "amicable"}));
  app.add_option("--relay-encoder", relay_encoder,
                 "Selection rules at the relay (pdf always re-encodes dynamically)")
      ->check(CLI::IsMember({"mblte"}));
  app.add_option("--trials", cfg.trials, "Independent Monte-Carlo trials")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.master_seed, "Master seed; trial i runs on mix_seed(seed, i)");
  app.add_option("--max-slots", cfg.sim.max_slots, "Per-trial slot cap (0 = 50*k)");
  app.add_option("--symbol-size", cfg.sim.symbol_size, "Payload bytes per symbol")
      ->check(CLI::PositiveNumber);
  app.add_option("--out-csv", cfg.out_csv, "Write per-slot mean curves to this file");
  app.add_option("--out-json", cfg.out_json, "Write the summary to this file");
  app.add_option("--workers", cfg.workers,
                 "Worker threads (0 = LTRELAY_WORKERS env var, else hardware)");
  app.set_config("--config", "", "Flat key=value config file; command-line flags win");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.sim.strategy = ltrelay::parse_strategy(strategy);
    cfg.sim.source_encoder = ltrelay::parse_encoder_variant(source_encoder);
    cfg.sim.relay_encoder = ltrelay::parse_encoder_variant(relay_encoder);

    const ltrelay::AggregateTrace agg = ltrelay::monte_carlo(cfg);
    if (!cfg.out_csv.empty()) ltrelay::emit_csv(agg, cfg.out_csv);
    if (!cfg.out_json.empty()) ltrelay::emit_json_summary(agg, cfg.out_json);
    if (cfg.out_csv.empty() && cfg.out_json.empty()) {
      std::cout << ltrelay::json_summary_string(agg);
    }
  } catch (const std::exception& err) {
    std::cerr << "ltrelay: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
