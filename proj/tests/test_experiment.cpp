#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ltrelay/experiment.hpp"
#include "ltrelay/relay_sim.hpp"

using namespace ltrelay;

namespace {

ExperimentConfig fast_config() {
  ExperimentConfig exp;
  exp.sim.k = 16;
  exp.sim.symbol_size = 2;
  exp.sim.c = 0.3;
  exp.sim.delta = 0.5;
  exp.sim.eps_sr = 0.3;
  exp.sim.eps_rd = 0.2;
  exp.sim.strategy = Strategy::PartialDecodeForward;
  exp.trials = 24;
  exp.master_seed = 9;
  exp.workers = 1;
  return exp;
}

SimTrace hand_trace(std::vector<std::uint32_t> dest_counts,
                    std::optional<std::uint64_t> completion) {
  SimTrace trace;
  for (std::uint32_t count : dest_counts) trace.slots.push_back({0, count, true});
  trace.completion_slot = completion;
  return trace;
}

}  // namespace

TEST_CASE("trial seeds follow the published derivation") {
  CHECK(trial_seed(10, 0) == mix_seed(10, 0));
  CHECK(trial_seed(10, 7) == mix_seed(10, 7));
}

TEST_CASE("experiment validation rejects zero trials") {
  ExperimentConfig exp = fast_config();
  exp.trials = 0;
  CHECK_THROWS_AS(exp.validate(), std::invalid_argument);
  exp = fast_config();
  exp.sim.k = 0;  // nested sim config is validated too
  CHECK_THROWS_AS(exp.validate(), std::invalid_argument);
}

TEST_CASE("default worker count honors the environment override") {
  const char* saved = std::getenv("LTRELAY_WORKERS");
  const std::string saved_value = saved ? saved : "";

  setenv("LTRELAY_WORKERS", "3", 1);
  CHECK(default_worker_count() == 3);
  setenv("LTRELAY_WORKERS", "0", 1);
  CHECK(default_worker_count() >= 1);  // invalid values fall back
  setenv("LTRELAY_WORKERS", "junk", 1);
  CHECK(default_worker_count() >= 1);
  unsetenv("LTRELAY_WORKERS");
  CHECK(default_worker_count() >= 1);

  if (saved) {
    setenv("LTRELAY_WORKERS", saved_value.c_str(), 1);
  } else {
    unsetenv("LTRELAY_WORKERS");
  }
}

TEST_CASE("accumulator means, errors, and quantiles on hand-built traces") {
  ExperimentConfig exp = fast_config();
  exp.sim.k = 4;
  exp.trials = 2;

  TraceAccumulator acc;
  acc.add(hand_trace({1, 2, 4}, 3));
  acc.add(hand_trace({2, 4}, 2));
  const AggregateTrace agg = acc.finalize(exp);

  CHECK(agg.trials == 2);
  CHECK(agg.incomplete_trials == 0);
  REQUIRE(agg.slot_count() == 3);

  // Slot 3 extends the shorter trace flat at its final count of 4.
  CHECK(agg.mean_frac_dest[0] == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(agg.mean_frac_dest[1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(agg.mean_frac_dest[2] == doctest::Approx(1.0).epsilon(1e-15));

  // SE at slot 1: counts {1, 2}, sample sd = sqrt(1/2), se = 0.5, over k.
  CHECK(agg.se_dest[0] == doctest::Approx(0.5 / 4.0).epsilon(1e-12));
  CHECK(agg.se_dest[2] == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(agg.dest_completion.samples == 2);
  CHECK(agg.dest_completion.mean == doctest::Approx(2.5));
  CHECK(agg.dest_completion.min == 2.0);
  CHECK(agg.dest_completion.max == 3.0);
  CHECK(agg.dest_completion.median == doctest::Approx(2.5));
  CHECK(agg.dest_completion.q25 == doctest::Approx(2.25));
  CHECK(agg.dest_completion.q90 == doctest::Approx(2.9));
  CHECK(agg.relay_completion.samples == 0);

  // A third, incomplete trial is counted and still averaged.
  acc.add(hand_trace({0, 0, 1}, std::nullopt));
  exp.trials = 3;
  const AggregateTrace agg3 = acc.finalize(exp);
  CHECK(agg3.incomplete_trials == 1);
  CHECK(agg3.dest_completion.samples == 2);
  CHECK(agg3.mean_frac_dest[2] == doctest::Approx((4 + 4 + 1) / 3.0 / 4.0));
}

TEST_CASE("single-trial aggregates carry no spread") {
  ExperimentConfig exp = fast_config();
  exp.trials = 1;
  const AggregateTrace agg = monte_carlo(exp);
  const SimTrace trace = run_simulation(exp.sim, trial_seed(exp.master_seed, 0));
  REQUIRE(agg.slot_count() == trace.slots.size());
  for (std::size_t i = 0; i < trace.slots.size(); ++i) {
    CHECK(agg.mean_frac_dest[i] ==
          doctest::Approx(trace.slots[i].dest_recovered / 16.0).epsilon(1e-15));
    CHECK(agg.se_dest[i] == 0.0);
  }
  CHECK(agg.dest_completion.stddev == 0.0);
}

TEST_CASE("any partition of a trial set merges to identical output") {
  const ExperimentConfig exp = fast_config();
  std::vector<SimTrace> traces;
  for (std::uint64_t i = 0; i < exp.trials; ++i) {
    traces.push_back(run_simulation(exp.sim, trial_seed(exp.master_seed, i)));
  }

  TraceAccumulator whole;
  for (const SimTrace& t : traces) whole.add(t);

  TraceAccumulator left, right, interleaved_a, interleaved_b;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    (i < traces.size() / 3 ? left : right).add(traces[i]);
    (i % 2 ? interleaved_a : interleaved_b).add(traces[i]);
  }
  TraceAccumulator split = left;
  split.merge(right);
  TraceAccumulator striped = interleaved_b;
  striped.merge(interleaved_a);

  const std::string want = csv_string(whole.finalize(exp));
  CHECK(csv_string(split.finalize(exp)) == want);
  CHECK(csv_string(striped.finalize(exp)) == want);
  CHECK(json_summary_string(striped.finalize(exp)) == json_summary_string(whole.finalize(exp)));
}

TEST_CASE("monte carlo output is invariant under the worker count") {
  ExperimentConfig exp = fast_config();
  exp.workers = 1;
  const AggregateTrace one = monte_carlo(exp);
  exp.workers = 2;
  const AggregateTrace two = monte_carlo(exp);
  exp.workers = 5;
  const AggregateTrace five = monte_carlo(exp);
  exp.workers = 64;  // more workers than trials clamps harmlessly
  const AggregateTrace many = monte_carlo(exp);

  const std::string want_csv = csv_string(one);
  const std::string want_json = json_summary_string(one);
  CHECK(csv_string(two) == want_csv);
  CHECK(csv_string(five) == want_csv);
  CHECK(csv_string(many) == want_csv);
  CHECK(json_summary_string(two) == want_json);
  CHECK(json_summary_string(five) == want_json);
  CHECK(json_summary_string(many) == want_json);
}

TEST_CASE("repeated runs and distinct seeds behave as expected") {
  ExperimentConfig exp = fast_config();
  const std::string first = csv_string(monte_carlo(exp));
  const std::string second = csv_string(monte_carlo(exp));
  CHECK(first == second);

  exp.master_seed = 10;
  CHECK(csv_string(monte_carlo(exp)) != first);
}

TEST_CASE("t_at_fraction finds the first crossing slot") {
  ExperimentConfig exp = fast_config();
  exp.sim.k = 4;
  exp.trials = 1;
  TraceAccumulator acc;
  acc.add(hand_trace({1, 2, 4}, 3));
  const AggregateTrace agg = acc.finalize(exp);

  CHECK(t_at_fraction(agg, Hop::Dest, 0.25) == 1);
  CHECK(t_at_fraction(agg, Hop::Dest, 0.5) == 2);
  CHECK(t_at_fraction(agg, Hop::Dest, 0.6) == 3);
  CHECK(t_at_fraction(agg, Hop::Dest, 1.0) == 3);
  CHECK_FALSE(t_at_fraction(agg, Hop::Relay, 0.25).has_value());
  CHECK_THROWS_AS(t_at_fraction(agg, Hop::Dest, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(t_at_fraction(agg, Hop::Dest, 1.5), std::invalid_argument);
}

TEST_CASE("csv output is exact and round-trips") {
  const ExperimentConfig exp = fast_config();
  const AggregateTrace agg = monte_carlo(exp);
  const std::string csv = csv_string(agg);

  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "slot,mean_frac_relay,se_relay,mean_frac_dest,se_dest");

  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string field;
    REQUIRE(std::getline(row, field, ','));
    CHECK(std::stoull(field) == rows + 1);
    const double want[] = {agg.mean_frac_relay[rows], agg.se_relay[rows],
                           agg.mean_frac_dest[rows], agg.se_dest[rows]};
    for (double expected : want) {
      REQUIRE(std::getline(row, field, ','));
      // Shortest round-trip formatting: parsing recovers the double exactly.
      CHECK(std::stod(field) == expected);
    }
    CHECK_FALSE(std::getline(row, field, ','));
    ++rows;
  }
  CHECK(rows == agg.slot_count());
  CHECK(csv.back() == '\n');
}

TEST_CASE("json summary echoes the run and its derived statistics") {
  const ExperimentConfig exp = fast_config();
  const AggregateTrace agg = monte_carlo(exp);
  const nlohmann::json doc = nlohmann::json::parse(json_summary_string(agg));

  CHECK(doc.at("config").at("strategy") == "pdf");
  CHECK(doc.at("config").at("source_encoder") == "amicable");
  CHECK(doc.at("config").at("relay_encoder") == "mblte");
  CHECK(doc.at("config").at("k") == 16);
  CHECK(doc.at("config").at("symbol_size") == 2);
  CHECK(doc.at("config").at("eps_sr") == 0.3);
  CHECK(doc.at("config").at("eps_rd") == 0.2);
  CHECK(doc.at("config").at("max_slots") == 50 * 16);
  CHECK(doc.at("config").at("trials") == 24);
  CHECK(doc.at("config").at("master_seed") == 9);
  CHECK_FALSE(doc.at("config").contains("workers"));  // output never depends on it

  CHECK(doc.at("trials") == 24);
  CHECK(doc.at("slots") == agg.slot_count());
  const auto t50 = t_at_fraction(agg, Hop::Dest, 0.5);
  REQUIRE(t50.has_value());
  CHECK(doc.at("t_at_fraction").at("dest").at("0.5") == *t50);
  CHECK(doc.at("completion").at("dest").at("mean").get<double>() ==
        doctest::Approx(agg.dest_completion.mean));
  CHECK(json_summary_string(agg).back() == '\n');
}

TEST_CASE("json summary uses nulls when an event never happens") {
  ExperimentConfig exp = fast_config();
  exp.sim.eps_sr = 1.0;  // nothing ever gets through
  exp.sim.max_slots = 32;
  exp.trials = 5;
  const AggregateTrace agg = monte_carlo(exp);
  CHECK(agg.incomplete_trials == 5);
  CHECK(agg.dest_completion.samples == 0);

  const nlohmann::json doc = nlohmann::json::parse(json_summary_string(agg));
  CHECK(doc.at("incomplete_trials") == 5);
  CHECK(doc.at("t_at_fraction").at("dest").at("0.5").is_null());
  CHECK(doc.at("completion").at("dest").at("samples") == 0);
  CHECK(doc.at("completion").at("dest").at("mean").is_null());
}

TEST_CASE("emitted files hold exactly the in-memory strings") {
  namespace fs = std::filesystem;
  const ExperimentConfig exp = fast_config();
  const AggregateTrace agg = monte_carlo(exp);

  const fs::path dir = fs::temp_directory_path() / "ltrelay_emit_test";
  fs::create_directories(dir);
  const fs::path csv_path = dir / "out.csv";
  const fs::path json_path = dir / "out.json";
  emit_csv(agg, csv_path.string());
  emit_json_summary(agg, json_path.string());

  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  CHECK(slurp(csv_path) == csv_string(agg));
  CHECK(slurp(json_path) == json_summary_string(agg));
  fs::remove_all(dir);

  CHECK_THROWS_AS(emit_csv(agg, (dir / "missing" / "out.csv").string()), std::runtime_error);
}
