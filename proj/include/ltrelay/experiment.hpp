#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltrelay/relay_sim.hpp"

namespace ltrelay {

struct ExperimentConfig {
  SimConfig sim;
  std::uint64_t trials = 100;
  std::uint64_t master_seed = 1;
  /// 0 = auto: LTRELAY_WORKERS if set, else hardware concurrency.
  std::uint32_t workers = 0;
  std::string out_csv;   // empty = do not write
  std::string out_json;  // empty = do not write

  void validate() const;
};

/// Trial i of a run is seeded with trial_seed(master_seed, i). This
/// derivation is part of the external contract: published results carry
/// (config, master_seed) and reproduce anywhere.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
  return mix_seed(master_seed, trial_index);
}

/// Resolved default worker count: LTRELAY_WORKERS when set to a positive
/// integer, otherwise hardware concurrency (at least 1).
std::uint32_t default_worker_count();

enum class Hop : std::uint8_t { Relay, Dest };

/// Sample statistics over the trials that reached the event. Quantiles
/// use linear interpolation between order statistics.
struct CompletionStats {
  std::uint64_t samples = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample (n-1); 0 when samples < 2
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double q90 = 0.0;
  double max = 0.0;
};

/// Mean recovery curves over a trial set. Incomplete trials are extended
/// flat at their final count before averaging, so curves stay monotone and
/// the mean carries no survivor bias.
struct AggregateTrace {
  ExperimentConfig config;
  std::uint64_t trials = 0;
  std::uint64_t incomplete_trials = 0;  // destination never completed
  std::vector<double> mean_frac_relay;  // one entry per slot, slot = index + 1
  std::vector<double> se_relay;
  std::vector<double> mean_frac_dest;
  std::vector<double> se_dest;
  CompletionStats relay_completion;
  CompletionStats dest_completion;

  std::size_t slot_count() const { return mean_frac_dest.size(); }
};

/// Order-insensitive trial accumulator. Internally keeps exact integer
/// per-slot sums (counts and squared counts), so any partition of a trial
/// set across accumulators merges to bit-identical results — the basis of
/// the parallel/serial equivalence guarantee.
class TraceAccumulator {
public:
  void add(const SimTrace& trace);
  void merge(const TraceAccumulator& other);
  AggregateTrace finalize(const ExperimentConfig& cfg) const;

  std::uint64_t trials() const { return trials_; }

private:
  void extend_to(std::size_t len);

  std::vector<std::int64_t> relay_sum_, relay_sq_, dest_sum_, dest_sq_;
  // Running totals of per-trial final counts; they back-fill the flat
  // extension when a longer trace arrives later.
  std::int64_t relay_final_sum_ = 0, relay_final_sq_ = 0;
  std::int64_t dest_final_sum_ = 0, dest_final_sq_ = 0;
  std::uint64_t trials_ = 0;
  std::uint64_t incomplete_ = 0;
  std::vector<std::uint64_t> relay_completions_;
  std::vector<std::uint64_t> dest_completions_;
};

/// Runs cfg.trials independent simulations (striped across workers) and
/// aggregates them. Output is a deterministic function of (cfg.sim,
/// trials, master_seed) — the worker count never shows.
AggregateTrace monte_carlo(const ExperimentConfig& cfg);

/// Smallest slot whose mean recovered fraction reaches p, if any.
std::optional<std::uint64_t> t_at_fraction(const AggregateTrace& agg, Hop hop, double p);

/// CSV: header `slot,mean_frac_relay,se_relay,mean_frac_dest,se_dest`,
/// one row per slot, 1-based slots, shortest round-trip decimals (parsing
/// the file recovers the in-memory doubles exactly).
std::string csv_string(const AggregateTrace& agg);

/// JSON summary: config echo (without worker count or output paths),
/// trial counts, t_at_fraction for p in {0.25, 0.5, 0.75, 0.9, 0.97} on
/// both hops, and completion statistics.
std::string json_summary_string(const AggregateTrace& agg);

void emit_csv(const AggregateTrace& agg, const std::string& path);
void emit_json_summary(const AggregateTrace& agg, const std::string& path);

}  // namespace ltrelay
