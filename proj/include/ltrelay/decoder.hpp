#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ltrelay/symbols.hpp"

namespace ltrelay {

/// One recovery event: a source index and its payload bytes.
struct Recovered {
  std::uint32_t index = 0;
  std::vector<std::uint8_t> payload;

  bool operator==(const Recovered&) const = default;
};

/// Incremental peeling decoder over the symbol bipartite graph.
///
/// Every ingested symbol is eagerly reduced against the recovered set, so
/// no stored symbol ever references a recovered index; stored symbols
/// always have remaining degree >= 2. Degree-1 arrivals start a ripple
/// cascade that runs to exhaustion inside ingest().
class PeelingDecoder {
public:
  PeelingDecoder(std::uint32_t k, std::uint32_t symbol_size);

  /// Feeds one symbol; returns the symbols newly recovered by this call
  /// in recovery order. Duplicates reduce to degree 0 and vanish.
  /// Throws on out-of-range neighbors, unsorted/duplicate neighbor
  /// lists, or a payload length mismatch.
  std::vector<Recovered> ingest(const CodedSymbol& sym);

  std::uint32_t recovered_count() const noexcept { return recovered_count_; }
  bool is_complete() const noexcept { return recovered_count_ == k_; }
  bool is_recovered(std::uint32_t index) const;
  std::span<const std::uint8_t> payload(std::uint32_t index) const;  // requires recovered

  std::uint32_t k() const noexcept { return k_; }
  std::uint32_t symbol_size() const noexcept { return symbol_size_; }
  std::uint32_t pending_count() const noexcept { return pending_count_; }

private:
  struct PendingSymbol {
    std::vector<std::uint32_t> neighbors;  // empty = dead slot
    std::vector<std::uint8_t> payload;
  };

  void resolve(std::uint32_t index, std::vector<std::uint8_t> payload,
               std::vector<Recovered>& newly);

  std::uint32_t k_;
  std::uint32_t symbol_size_;
  std::uint32_t recovered_count_ = 0;
  std::uint32_t pending_count_ = 0;
  std::vector<std::uint8_t> recovered_data_;  // k * symbol_size
  std::vector<std::uint8_t> recovered_flag_;
  std::vector<PendingSymbol> pending_;
  std::vector<std::uint32_t> free_slots_;
  std::vector<std::vector<std::uint32_t>> by_neighbor_;  // index -> pending slots
};

}  // namespace ltrelay
