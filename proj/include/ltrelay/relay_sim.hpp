#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltrelay/degree_distribution.hpp"
#include "ltrelay/encoder.hpp"

namespace ltrelay {

enum class Strategy : std::uint8_t {
  SingleHop,             // source -> receiver over one erasure channel
  DecodeForward,         // relay fully decodes, then re-encodes (two stages)
  PartialDecodeForward,  // relay re-encodes over its growing recovered set
};

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& name);

/// Parameters of one two-hop run. The seed is deliberately not part of the
/// config: runs take it separately so one config can drive many trials.
struct SimConfig {
  std::uint32_t k = 256;
  std::uint32_t symbol_size = 1;
  double c = 0.03;
  double delta = 0.5;
  double eps_sr = 0.0;
  double eps_rd = 0.0;
  Strategy strategy = Strategy::PartialDecodeForward;
  EncoderVariant source_encoder = EncoderVariant::AmicableMblte;
  /// Stage-2 / relay selection rules. PDF always runs the dynamic relay
  /// encoder; this knob picks the variant a DF relay re-encodes with.
  EncoderVariant relay_encoder = EncoderVariant::Mblte;
  /// Slot cap; 0 means the default of 50k slots.
  std::uint64_t max_slots = 0;

  std::uint64_t effective_max_slots() const {
    return max_slots == 0 ? std::uint64_t{50} * k : max_slots;
  }

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;

  /// Robust soliton for k >= 2; a point mass on degree 1 for k = 1
  /// (the soliton construction needs at least two symbols).
  DegreeDistribution make_distribution() const;
};

struct SlotRecord {
  std::uint32_t relay_recovered = 0;
  std::uint32_t dest_recovered = 0;
  /// True when the relay put a symbol on the air this slot (it may still
  /// be erased). Lets tests pin the "never idles once non-empty" rule
  /// down without reconstructing it from counts.
  bool relay_emitted = false;
};

struct SimTrace {
  std::vector<SlotRecord> slots;                       // slot t = index + 1
  std::optional<std::uint64_t> completion_slot;        // destination done
  std::optional<std::uint64_t> relay_completion_slot;  // relay done (df/pdf)

  bool complete() const { return completion_slot.has_value(); }
};

/// Substream tags of the seed-derivation contract. Every run consumes
/// independent streams Rng::substream(seed, tag); the assignment below is
/// fixed so traces reproduce across machines and versions.
namespace stream_tag {
inline constexpr std::uint64_t payload = 0;     // source block contents
inline constexpr std::uint64_t source_enc = 1;  // source encoder choices
inline constexpr std::uint64_t chan_sr = 2;     // source->relay erasures
inline constexpr std::uint64_t relay_enc = 3;   // relay encoder choices
inline constexpr std::uint64_t chan_rd = 4;     // relay->dest erasures
}  // namespace stream_tag

/// One symbol per slot from the source through channel(eps_sr) straight
/// into the receiving decoder; eps_rd unused. Recovered counts land in
/// dest_recovered.
SimTrace run_single_hop(const SimConfig& cfg, std::uint64_t seed);

/// Decode-and-forward: stage 1 fills the relay decoder; on relay
/// completion (instantaneous, free ACK) stage 2 re-encodes all k symbols
/// with a fresh relay_encoder and serves the destination over eps_rd.
SimTrace run_df(const SimConfig& cfg, std::uint64_t seed);

/// Partial decode-and-forward: each slot runs source->relay first, then
/// the relay (dynamic encoder over everything recovered so far, including
/// this slot's arrival) serves the destination in the same slot.
SimTrace run_pdf(const SimConfig& cfg, std::uint64_t seed);

/// Dispatch on cfg.strategy.
SimTrace run_simulation(const SimConfig& cfg, std::uint64_t seed);

}  // namespace ltrelay
