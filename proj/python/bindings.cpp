#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ltrelay/degree_distribution.hpp"
#include "ltrelay/experiment.hpp"
#include "ltrelay/relay_sim.hpp"

namespace py = pybind11;

namespace {

ltrelay::SimConfig make_sim_config(std::uint32_t k, double c, double delta, double eps_sr,
                                   double eps_rd, const std::string& strategy,
                                   const std::string& source_encoder,
                                   const std::string& relay_encoder, std::uint64_t max_slots,
                                   std::uint32_t symbol_size) {
  ltrelay::SimConfig sim;
  sim.k = k;
  sim.c = c;
  sim.delta = delta;
  sim.eps_sr = eps_sr;
  sim.eps_rd = eps_rd;
  sim.strategy = ltrelay::parse_strategy(strategy);
  sim.source_encoder = ltrelay::parse_encoder_variant(source_encoder);
  sim.relay_encoder = ltrelay::parse_encoder_variant(relay_encoder);
  sim.max_slots = max_slots;
  sim.symbol_size = symbol_size;
  return sim;
}

ltrelay::Hop parse_hop(const std::string& hop) {
  if (hop == "relay") return ltrelay::Hop::Relay;
  if (hop == "dest") return ltrelay::Hop::Dest;
  throw std::invalid_argument("hop must be 'relay' or 'dest'");
}

py::dict stats_dict(const ltrelay::CompletionStats& st) {
  py::dict d;
  d["samples"] = st.samples;
  if (st.samples > 0) {
    d["mean"] = st.mean;
    d["stddev"] = st.stddev;
    d["min"] = st.min;
    d["q25"] = st.q25;
    d["median"] = st.median;
    d["q75"] = st.q75;
    d["q90"] = st.q90;
    d["max"] = st.max;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rateless-coded two-hop relay simulator (LT/MBLTE encoders, peeling decoder)";

  m.def("mix_seed", &ltrelay::mix_seed, py::arg("seed"), py::arg("stream"),
        "Derive an independent substream seed (the published trial-seed contract).");

  py::class_<ltrelay::DegreeDistribution>(m, "DegreeDistribution")
      .def_property_readonly("k", &ltrelay::DegreeDistribution::k)
      .def("pmf", &ltrelay::DegreeDistribution::pmf, py::arg("degree"))
      .def("cdf", &ltrelay::DegreeDistribution::cdf, py::arg("degree"))
      .def_property_readonly("pmf_table", &ltrelay::DegreeDistribution::pmf_table)
      .def("__repr__", [](const ltrelay::DegreeDistribution& d) {
        return "<DegreeDistribution k=" + std::to_string(d.k()) + ">";
      });

  m.def("ideal_soliton", &ltrelay::ideal_soliton, py::arg("k"));
  m.def("robust_soliton", &ltrelay::robust_soliton, py::arg("k"), py::arg("c"), py::arg("delta"));
  m.def("first_stage_length", &ltrelay::first_stage_length, py::arg("dist"),
        "Smallest N with N * (pmf(1) + pmf(2)) >= k.");
  m.def(
      "optimal_memory_order",
      [](const ltrelay::DegreeDistribution& dist, std::uint64_t n) -> std::optional<std::uint32_t> {
        return ltrelay::optimal_memory_order(dist, n);
      },
      py::arg("dist"), py::arg("n"), "Smallest order i with n * cdf(i) >= k, or None.");

  m.def(
      "run_simulation",
      [](std::uint32_t k, double c, double delta, double eps_sr, double eps_rd,
         const std::string& strategy, const std::string& source_encoder,
         const std::string& relay_encoder, std::uint64_t max_slots, std::uint32_t symbol_size,
         std::uint64_t seed) {
        const ltrelay::SimConfig sim = make_sim_config(k, c, delta, eps_sr, eps_rd, strategy,
                                                       source_encoder, relay_encoder, max_slots,
                                                       symbol_size);
        ltrelay::SimTrace trace;
        {
          py::gil_scoped_release release;
          trace = ltrelay::run_simulation(sim, seed);
        }
        py::dict out;
        std::vector<std::uint32_t> relay, dest;
        std::vector<bool> emitted;
        relay.reserve(trace.slots.size());
        dest.reserve(trace.slots.size());
        emitted.reserve(trace.slots.size());
        for (const ltrelay::SlotRecord& rec : trace.slots) {
          relay.push_back(rec.relay_recovered);
          dest.push_back(rec.dest_recovered);
          emitted.push_back(rec.relay_emitted);
        }
        out["relay_recovered"] = std::move(relay);
        out["dest_recovered"] = std::move(dest);
        out["relay_emitted"] = std::move(emitted);
        out["completion_slot"] = trace.completion_slot;
        out["relay_completion_slot"] = trace.relay_completion_slot;
        return out;
      },
      py::arg("k") = 256, py::arg("c") = 0.03, py::arg("delta") = 0.5, py::arg("eps_sr") = 0.0,
      py::arg("eps_rd") = 0.0, py::arg("strategy") = "pdf", py::arg("source_encoder") = "amicable",
      py::arg("relay_encoder") = "mblte", py::arg("max_slots") = 0, py::arg("symbol_size") = 1,
      py::arg("seed") = 1,
      "Run one seeded trial; returns per-slot counts and completion slots.");

  py::class_<ltrelay::AggregateTrace>(m, "Aggregate")
      .def_property_readonly("trials",
                             [](const ltrelay::AggregateTrace& a) { return a.trials; })
      .def_property_readonly(
          "incomplete_trials",
          [](const ltrelay::AggregateTrace& a) { return a.incomplete_trials; })
      .def_property_readonly(
          "slots", [](const ltrelay::AggregateTrace& a) { return a.slot_count(); })
      .def_property_readonly(
          "mean_frac_relay",
          [](const ltrelay::AggregateTrace& a) { return a.mean_frac_relay; })
      .def_property_readonly(
          "se_relay", [](const ltrelay::AggregateTrace& a) { return a.se_relay; })
      .def_property_readonly(
          "mean_frac_dest",
          [](const ltrelay::AggregateTrace& a) { return a.mean_frac_dest; })
      .def_property_readonly("se_dest",
                             [](const ltrelay::AggregateTrace& a) { return a.se_dest; })
      .def_property_readonly(
          "relay_completion",
          [](const ltrelay::AggregateTrace& a) { return stats_dict(a.relay_completion); })
      .def_property_readonly(
          "dest_completion",
          [](const ltrelay::AggregateTrace& a) { return stats_dict(a.dest_completion); })
      .def(
          "t_at_fraction",
          [](const ltrelay::AggregateTrace& a, const std::string& hop, double p) {
            return ltrelay::t_at_fraction(a, parse_hop(hop), p);
          },
          py::arg("hop"), py::arg("p"))
      .def("csv", [](const ltrelay::AggregateTrace& a) { return ltrelay::csv_string(a); })
      .def("json_summary",
           [](const ltrelay::AggregateTrace& a) { return ltrelay::json_summary_string(a); });

  m.def(
      "monte_carlo",
      [](std::uint32_t k, double c, double delta, double eps_sr, double eps_rd,
         const std::string& strategy, const std::string& source_encoder,
         const std::string& relay_encoder, std::uint64_t max_slots, std::uint32_t symbol_size,
         std::uint64_t trials, std::uint64_t master_seed, std::uint32_t workers) {
        ltrelay::ExperimentConfig cfg;
        cfg.sim = make_sim_config(k, c, delta, eps_sr, eps_rd, strategy, source_encoder,
                                  relay_encoder, max_slots, symbol_size);
        cfg.trials = trials;
        cfg.master_seed = master_seed;
        cfg.workers = workers;
        py::gil_scoped_release release;
        return ltrelay::monte_carlo(cfg);
      },
      py::arg("k") = 256, py::arg("c") = 0.03, py::arg("delta") = 0.5, py::arg("eps_sr") = 0.0,
      py::arg("eps_rd") = 0.0, py::arg("strategy") = "pdf", py::arg("source_encoder") = "amicable",
      py::arg("relay_encoder") = "mblte", py::arg("max_slots") = 0, py::arg("symbol_size") = 1,
      py::arg("trials") = 100, py::arg("master_seed") = 1, py::arg("workers") = 0,
      "Aggregate `trials` seeded runs into mean recovery curves.");
}
