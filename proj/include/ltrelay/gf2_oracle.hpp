#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ltrelay/decoder.hpp"
#include "ltrelay/symbols.hpp"

namespace ltrelay {

/// Solves the GF(2) system formed by `symbols` with Gauss-Jordan
/// elimination and returns every source symbol whose value is uniquely
/// determined, sorted by index.
///
/// This is the exhaustive reference the peeling decoder is checked
/// against: peeling recoveries must always be a subset of this set with
/// byte-equal payloads. Input symbols are assumed mutually consistent
/// (they come from a real encoding of one block).
std::vector<Recovered> ge_oracle_decode(std::uint32_t k, std::uint32_t symbol_size,
                                        std::span<const CodedSymbol> symbols);

}  // namespace ltrelay
