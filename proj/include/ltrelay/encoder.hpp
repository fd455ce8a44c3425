#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ltrelay/degree_distribution.hpp"
#include "ltrelay/rng.hpp"
#include "ltrelay/symbols.hpp"

namespace ltrelay {

enum class EncoderVariant : std::uint8_t {
  PlainLt,        // uniform neighbor choice for every degree
  Mblte,          // memory-based selection for degrees 1 and 2
  AmicableMblte,  // Mblte with a pre-sampled, ascending first stage
  DynamicRelay,   // Mblte rules restricted to a growing eligible set
};

std::string to_string(EncoderVariant variant);
EncoderVariant parse_encoder_variant(const std::string& name);

/// Rateless encoder over k source symbols.
///
/// Holds the per-stream selection memory: instantaneous degrees (how many
/// emitted symbols each source index has joined), the exclusion set S1
/// fed by degree-1 picks and degree-2 second picks, the sorted queue of
/// pre-sampled first-stage degrees (amicable), and the eligible set
/// (dynamic relay). Single-owner; callers pass their own random stream.
///
/// Degree handling: sampled degrees are clamped to k, and additionally to
/// the eligible-set size for the dynamic-relay variant.
///
/// Selection per degree d (memory-based variants):
///   d = 1: the index with the highest instantaneous degree among those
///          not in S1 (ties broken uniformly); the pick joins S1. If all
///          indices are in S1, falls back to a uniform pick.
///   d = 2: first a uniform pick from S1 (kept in S1), then the highest
///          instantaneous degree among indices outside S1 and distinct
///          from the first pick; the second pick joins S1. An empty S1
///          degrades to two distinct uniform picks; an exhausted
///          complement degrades to a uniform distinct pick.
///   d >= 3: d distinct uniform picks.
/// Neighbors within one symbol are always distinct.
class LtEncoder {
public:
  static LtEncoder plain(DegreeDistribution dist);
  static LtEncoder mblte(DegreeDistribution dist);

  /// Pre-samples first_stage_length(dist) degrees from `rng` and sorts
  /// them ascending; encode_next consumes that queue before sampling
  /// fresh degrees.
  static LtEncoder amicable(DegreeDistribution dist, Rng& rng);

  /// Encodes only over the eligible set, empty at construction; callers
  /// grow it with grow_eligible() as their decoder recovers symbols.
  static LtEncoder dynamic_relay(DegreeDistribution dist);

  /// Emits the next symbol. Returns nullopt only for a dynamic-relay
  /// encoder whose eligible set is still empty.
  std::optional<CodedSymbol> encode_next(const SourceBlock& block, Rng& rng);

  /// Emits one symbol with the given degree through this variant's
  /// selection rules, skipping degree acquisition (the amicable stage
  /// queue is left untouched). Degree clamping still applies.
  CodedSymbol encode_with_degree(const SourceBlock& block, std::uint32_t degree, Rng& rng);

  /// Adds `newly` to the eligible set (dynamic relay only). Indices must
  /// be in range and not yet eligible; the set only ever grows.
  void grow_eligible(std::span<const std::uint32_t> newly);

  EncoderVariant variant() const noexcept { return variant_; }
  std::uint32_t k() const noexcept { return dist_.k(); }
  std::uint64_t emitted() const noexcept { return emitted_; }
  const DegreeDistribution& distribution() const noexcept { return dist_; }

  /// Remaining pre-sampled first-stage degrees (amicable; ascending).
  std::span<const std::uint32_t> stage_degrees() const noexcept;
  std::uint32_t instantaneous_degree(std::uint32_t index) const;
  std::vector<std::uint32_t> s1() const;        // sorted snapshot
  std::vector<std::uint32_t> eligible() const;  // sorted snapshot

private:
  LtEncoder(EncoderVariant variant, DegreeDistribution dist);

  std::uint32_t acquire_degree(Rng& rng);
  std::vector<std::uint32_t> select_neighbors(std::uint32_t degree, Rng& rng);
  std::vector<std::uint32_t> select_uniform(std::uint32_t degree, Rng& rng);
  std::uint32_t argmax_outside_s1(std::optional<std::uint32_t> excluded, Rng& rng);
  std::uint32_t uniform_pick(std::optional<std::uint32_t> excluded, Rng& rng);
  void insert_s1(std::uint32_t index);
  CodedSymbol finish_symbol(const SourceBlock& block, std::vector<std::uint32_t> neighbors);

  EncoderVariant variant_;
  DegreeDistribution dist_;
  std::uint64_t emitted_ = 0;

  std::vector<std::uint32_t> inst_degree_;  // edges created so far, per source index
  std::vector<std::uint8_t> in_s1_;
  std::vector<std::uint32_t> s1_list_;

  // Selection universe: a permutation of 0..k-1, or of the eligible set
  // for the dynamic variant. Partial Fisher-Yates runs in place.
  std::vector<std::uint32_t> universe_;
  std::vector<std::uint8_t> in_eligible_;  // dynamic only

  std::vector<std::uint32_t> stage_degrees_;  // amicable only, ascending
  std::size_t stage_next_ = 0;
};

}  // namespace ltrelay
