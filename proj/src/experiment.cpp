#include "ltrelay/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace ltrelay {

void ExperimentConfig::validate() const {
  sim.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
}

std::uint32_t default_worker_count() {
  if (const char* env = std::getenv("LTRELAY_WORKERS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0 && parsed <= 4096) {
      return static_cast<std::uint32_t>(parsed);
    }
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1u;
}

void TraceAccumulator::extend_to(std::size_t len) {
  while (relay_sum_.size() < len) {
    relay_sum_.push_back(relay_final_sum_);
    relay_sq_.push_back(relay_final_sq_);
    dest_sum_.push_back(dest_final_sum_);
    dest_sq_.push_back(dest_final_sq_);
  }
}

void TraceAccumulator::add(const SimTrace& trace) {
  const std::size_t len = trace.slots.size();
  extend_to(len);
  for (std::size_t j = 0; j < len; ++j) {
    const std::int64_t r = trace.slots[j].relay_recovered;
    const std::int64_t d = trace.slots[j].dest_recovered;
    relay_sum_[j] += r;
    relay_sq_[j] += r * r;
    dest_sum_[j] += d;
    dest_sq_[j] += d * d;
  }
  const std::int64_t fr = len == 0 ? 0 : trace.slots.back().relay_recovered;
  const std::int64_t fd = len == 0 ? 0 : trace.slots.back().dest_recovered;
  for (std::size_t j = len; j < relay_sum_.size(); ++j) {
    relay_sum_[j] += fr;
    relay_sq_[j] += fr * fr;
    dest_sum_[j] += fd;
    dest_sq_[j] += fd * fd;
  }
  relay_final_sum_ += fr;
  relay_final_sq_ += fr * fr;
  dest_final_sum_ += fd;
  dest_final_sq_ += fd * fd;
  ++trials_;
  if (trace.completion_slot) {
    dest_completions_.push_back(*trace.completion_slot);
  } else {
    ++incomplete_;
  }
  if (trace.relay_completion_slot) relay_completions_.push_back(*trace.relay_completion_slot);
}

void TraceAccumulator::merge(const TraceAccumulator& other) {
  extend_to(other.relay_sum_.size());
  const std::size_t olen = other.relay_sum_.size();
  for (std::size_t j = 0; j < olen; ++j) {
    relay_sum_[j] += other.relay_sum_[j];
    relay_sq_[j] += other.relay_sq_[j];
    dest_sum_[j] += other.dest_sum_[j];
    dest_sq_[j] += other.dest_sq_[j];
  }
  for (std::size_t j = olen; j < relay_sum_.size(); ++j) {
    relay_sum_[j] += other.relay_final_sum_;
    relay_sq_[j] += other.relay_final_sq_;
    dest_sum_[j] += other.dest_final_sum_;
    dest_sq_[j] += other.dest_final_sq_;
  }
  relay_final_sum_ += other.relay_final_sum_;
  relay_final_sq_ += other.relay_final_sq_;
  dest_final_sum_ += other.dest_final_sum_;
  dest_final_sq_ += other.dest_final_sq_;
  trials_ += other.trials_;
  incomplete_ += other.incomplete_;
  relay_completions_.insert(relay_completions_.end(), other.relay_completions_.begin(),
                            other.relay_completions_.end());
  dest_completions_.insert(dest_completions_.end(), other.dest_completions_.begin(),
                           other.dest_completions_.end());
}

namespace {

double order_quantile(const std::vector<std::uint64_t>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return static_cast<double>(sorted[0]);
  const double pos = p * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= n) return static_cast<double>(sorted[n - 1]);
  return static_cast<double>(sorted[lo]) +
         frac * (static_cast<double>(sorted[lo + 1]) - static_cast<double>(sorted[lo]));
}

CompletionStats completion_stats(std::vector<std::uint64_t> samples) {
  CompletionStats st;
  st.samples = samples.size();
  if (samples.empty()) return st;
  std::sort(samples.begin(), samples.end());
  double sum = 0.0;
  for (std::uint64_t v : samples) sum += static_cast<double>(v);
  const double n = static_cast<double>(samples.size());
  st.mean = sum / n;
  if (samples.size() >= 2) {
    double sq = 0.0;
    for (std::uint64_t v : samples) {
      const double dev = static_cast<double>(v) - st.mean;
      sq += dev * dev;
    }
    st.stddev = std::sqrt(sq / (n - 1.0));
  }
  st.min = static_cast<double>(samples.front());
  st.q25 = order_quantile(samples, 0.25);
  st.median = order_quantile(samples, 0.5);
  st.q75 = order_quantile(samples, 0.75);
  st.q90 = order_quantile(samples, 0.9);
  st.max = static_cast<double>(samples.back());
  return st;
}

}  // namespace

AggregateTrace TraceAccumulator::finalize(const ExperimentConfig& cfg) const {
  if (trials_ == 0) throw std::logic_error("cannot finalize an empty accumulator");
  AggregateTrace agg;
  agg.config = cfg;
  agg.trials = trials_;
  agg.incomplete_trials = incomplete_;
  const double n = static_cast<double>(trials_);
  const double k = static_cast<double>(cfg.sim.k);
  const std::size_t len = relay_sum_.size();
  agg.mean_frac_relay.resize(len);
  agg.se_relay.resize(len);
  agg.mean_frac_dest.resize(len);
  agg.se_dest.resize(len);
  for (std::size_t j = 0; j < len; ++j) {
    const double mr = static_cast<double>(relay_sum_[j]) / n;
    const double md = static_cast<double>(dest_sum_[j]) / n;
    agg.mean_frac_relay[j] = mr / k;
    agg.mean_frac_dest[j] = md / k;
    if (trials_ >= 2) {
      const double vr =
          std::max(0.0, (static_cast<double>(relay_sq_[j]) - n * mr * mr) / (n - 1.0));
      const double vd =
          std::max(0.0, (static_cast<double>(dest_sq_[j]) - n * md * md) / (n - 1.0));
      agg.se_relay[j] = std::sqrt(vr / n) / k;
      agg.se_dest[j] = std::sqrt(vd / n) / k;
    }
  }
  agg.relay_completion = completion_stats(relay_completions_);
  agg.dest_completion = completion_stats(dest_completions_);
  return agg;
}

AggregateTrace monte_carlo(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::uint64_t requested = cfg.workers > 0 ? cfg.workers : default_worker_count();
  const std::uint32_t workers =
      static_cast<std::uint32_t>(std::max<std::uint64_t>(1, std::min(requested, cfg.trials)));

  std::vector<TraceAccumulator> parts(workers);
  auto run_stripe = [&cfg](TraceAccumulator& part, std::uint32_t first, std::uint32_t step) {
    for (std::uint64_t i = first; i < cfg.trials; i += step) {
      part.add(run_simulation(cfg.sim, trial_seed(cfg.master_seed, i)));
    }
  };

  if (workers == 1) {
    run_stripe(parts[0], 0, 1);
  } else {
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          run_stripe(parts[w], w, workers);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  TraceAccumulator total;
  for (const TraceAccumulator& part : parts) total.merge(part);
  return total.finalize(cfg);
}

std::optional<std::uint64_t> t_at_fraction(const AggregateTrace& agg, Hop hop, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("fraction must lie in (0, 1]");
  const std::vector<double>& curve =
      hop == Hop::Relay ? agg.mean_frac_relay : agg.mean_frac_dest;
  for (std::size_t j = 0; j < curve.size(); ++j) {
    if (curve[j] >= p) return j + 1;
  }
  return std::nullopt;
}

namespace {

void append_number(std::string& out, double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

void append_number(std::string& out, std::uint64_t value) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

nlohmann::ordered_json stats_json(const CompletionStats& st) {
  nlohmann::ordered_json j;
  j["samples"] = st.samples;
  if (st.samples == 0) {
    for (const char* key : {"mean", "stddev", "min", "q25", "median", "q75", "q90", "max"}) {
      j[key] = nullptr;
    }
    return j;
  }
  j["mean"] = st.mean;
  j["stddev"] = st.stddev;
  j["min"] = st.min;
  j["q25"] = st.q25;
  j["median"] = st.median;
  j["q75"] = st.q75;
  j["q90"] = st.q90;
  j["max"] = st.max;
  return j;
}

nlohmann::ordered_json hop_fractions_json(const AggregateTrace& agg, Hop hop) {
  static constexpr std::pair<const char*, double> kProbes[] = {
      {"0.25", 0.25}, {"0.5", 0.5}, {"0.75", 0.75}, {"0.9", 0.9}, {"0.97", 0.97}};
  nlohmann::ordered_json j;
  for (const auto& [key, p] : kProbes) {
    const auto slot = t_at_fraction(agg, hop, p);
    if (slot) {
      j[key] = *slot;
    } else {
      j[key] = nullptr;
    }
  }
  return j;
}

}  // namespace

std::string csv_string(const AggregateTrace& agg) {
  std::string out = "slot,mean_frac_relay,se_relay,mean_frac_dest,se_dest\n";
  out.reserve(out.size() + agg.slot_count() * 48);
  for (std::size_t j = 0; j < agg.slot_count(); ++j) {
    append_number(out, static_cast<std::uint64_t>(j + 1));
    out.push_back(',');
    append_number(out, agg.mean_frac_relay[j]);
    out.push_back(',');
    append_number(out, agg.se_relay[j]);
    out.push_back(',');
    append_number(out, agg.mean_frac_dest[j]);
    out.push_back(',');
    append_number(out, agg.se_dest[j]);
    out.push_back('\n');
  }
  return out;
}

std::string json_summary_string(const AggregateTrace& agg) {
  const ExperimentConfig& cfg = agg.config;
  nlohmann::ordered_json j;
  // Echo everything that determines the output; worker count and paths
  // deliberately excluded so reruns with different parallelism compare
  // byte-for-byte.
  nlohmann::ordered_json config;
  config["strategy"] = to_string(cfg.sim.strategy);
  config["source_encoder"] = to_string(cfg.sim.source_encoder);
  config["relay_encoder"] = to_string(cfg.sim.relay_encoder);
  config["k"] = cfg.sim.k;
  config["symbol_size"] = cfg.sim.symbol_size;
  config["c"] = cfg.sim.c;
  config["delta"] = cfg.sim.delta;
  config["eps_sr"] = cfg.sim.eps_sr;
  config["eps_rd"] = cfg.sim.eps_rd;
  config["max_slots"] = cfg.sim.effective_max_slots();
  config["trials"] = cfg.trials;
  config["master_seed"] = cfg.master_seed;
  j["config"] = std::move(config);
  j["trials"] = agg.trials;
  j["incomplete_trials"] = agg.incomplete_trials;
  j["slots"] = agg.slot_count();
  nlohmann::ordered_json taf;
  taf["relay"] = hop_fractions_json(agg, Hop::Relay);
  taf["dest"] = hop_fractions_json(agg, Hop::Dest);
  j["t_at_fraction"] = std::move(taf);
  nlohmann::ordered_json completion;
  completion["relay"] = stats_json(agg.relay_completion);
  completion["dest"] = stats_json(agg.dest_completion);
  j["completion"] = std::move(completion);
  return j.dump(2) + "\n";
}

namespace {

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

void emit_csv(const AggregateTrace& agg, const std::string& path) {
  write_file(path, csv_string(agg));
}

void emit_json_summary(const AggregateTrace& agg, const std::string& path) {
  write_file(path, json_summary_string(agg));
}

}  // namespace ltrelay
