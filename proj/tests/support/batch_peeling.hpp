#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ltrelay/decoder.hpp"
#include "ltrelay/symbols.hpp"

namespace ltrelay::testing {

/// Reference peeler: sweep the whole symbol set, reduce every stored row
/// against the recovered indices, release any row that drops to degree 1,
/// and repeat until a full sweep makes no progress. Quadratic and
/// allocation-happy on purpose — it is the plain-language description the
/// incremental decoder has to match at its fixed point.
inline std::vector<Recovered> batch_peel(std::uint32_t k, std::uint32_t symbol_size,
                                         std::span<const CodedSymbol> symbols) {
  struct Row {
    std::vector<std::uint32_t> neighbors;
    std::vector<std::uint8_t> payload;
  };
  std::vector<Row> rows;
  rows.reserve(symbols.size());
  for (const auto& sym : symbols) rows.push_back({sym.neighbors, sym.payload});

  std::vector<std::uint8_t> have(k, 0);
  std::vector<std::vector<std::uint8_t>> value(k);
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& row : rows) {
      if (row.neighbors.empty()) continue;
      std::vector<std::uint32_t> keep;
      for (std::uint32_t idx : row.neighbors) {
        if (have[idx]) {
          for (std::uint32_t b = 0; b < symbol_size; ++b) row.payload[b] ^= value[idx][b];
        } else {
          keep.push_back(idx);
        }
      }
      row.neighbors = std::move(keep);
      if (row.neighbors.size() == 1) {
        const std::uint32_t idx = row.neighbors[0];
        have[idx] = 1;
        value[idx] = row.payload;
        row.neighbors.clear();
        progress = true;
      }
    }
  }

  std::vector<Recovered> out;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (have[i]) out.push_back({i, value[i]});
  }
  return out;
}

}  // namespace ltrelay::testing
