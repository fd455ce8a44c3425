#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ltrelay/rng.hpp"

namespace ltrelay {

/// The k source payloads of one coding block, each symbol_size bytes.
class SourceBlock {
public:
  /// Zero-filled block; k >= 1, symbol_size >= 1.
  SourceBlock(std::uint32_t k, std::uint32_t symbol_size);

  /// Block with uniformly random payload bytes (one draw per byte).
  static SourceBlock random(std::uint32_t k, std::uint32_t symbol_size, Rng& rng);

  std::uint32_t k() const noexcept { return k_; }
  std::uint32_t symbol_size() const noexcept { return symbol_size_; }

  std::span<const std::uint8_t> payload(std::uint32_t index) const;
  void set_payload(std::uint32_t index, std::span<const std::uint8_t> bytes);

private:
  std::uint32_t k_;
  std::uint32_t symbol_size_;
  std::vector<std::uint8_t> data_;  // row-major, k * symbol_size
};

/// One output symbol: the XOR of the source payloads at `neighbors`
/// (one generator-matrix column), together with its generation order.
/// Neighbors are sorted, distinct, non-empty.
struct CodedSymbol {
  std::uint64_t seq = 0;
  std::vector<std::uint32_t> neighbors;
  std::vector<std::uint8_t> payload;

  std::uint32_t degree() const noexcept {
    return static_cast<std::uint32_t>(neighbors.size());
  }
};

/// Fixture line for golden traces: "<seq> <n0,n1,...> <hex payload>".
std::string dump_symbol(const CodedSymbol& sym);

}  // namespace ltrelay
