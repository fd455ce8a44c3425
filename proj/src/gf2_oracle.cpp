#include "ltrelay/gf2_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>

namespace ltrelay {
namespace {

struct Row {
  std::vector<std::uint64_t> bits;
  std::vector<std::uint8_t> payload;
};

bool test_bit(const Row& r, std::uint32_t col) {
  return (r.bits[col >> 6] >> (col & 63)) & 1u;
}

void xor_into(Row& dst, const Row& src) {
  for (std::size_t w = 0; w < dst.bits.size(); ++w) dst.bits[w] ^= src.bits[w];
  for (std::size_t b = 0; b < dst.payload.size(); ++b) dst.payload[b] ^= src.payload[b];
}

std::size_t popcount_row(const Row& r) {
  std::size_t total = 0;
  for (std::uint64_t w : r.bits) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

}  // namespace

std::vector<Recovered> ge_oracle_decode(std::uint32_t k, std::uint32_t symbol_size,
                                        std::span<const CodedSymbol> symbols) {
  const std::size_t words = (static_cast<std::size_t>(k) + 63) / 64;
  std::vector<Row> rows;
  rows.reserve(symbols.size());
  for (const CodedSymbol& sym : symbols) {
    if (sym.neighbors.empty()) continue;
    Row r;
    r.bits.assign(words, 0);
    r.payload = sym.payload;
    r.payload.resize(symbol_size, 0);
    for (std::uint32_t idx : sym.neighbors) r.bits[idx >> 6] |= std::uint64_t{1} << (idx & 63);
    rows.push_back(std::move(r));
  }

  // Gauss-Jordan: after the sweep every pivot column appears in exactly
  // one row, so a pivot row of weight 1 pins down that source symbol.
  std::size_t pivot_rows = 0;
  std::vector<std::uint32_t> pivot_col;
  for (std::uint32_t col = 0; col < k && pivot_rows < rows.size(); ++col) {
    std::size_t pivot = pivot_rows;
    while (pivot < rows.size() && !test_bit(rows[pivot], col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot_rows], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != pivot_rows && test_bit(rows[r], col)) xor_into(rows[r], rows[pivot_rows]);
    }
    pivot_col.push_back(col);
    ++pivot_rows;
  }

  std::vector<Recovered> determined;
  for (std::size_t r = 0; r < pivot_rows; ++r) {
    if (popcount_row(rows[r]) == 1) {
      determined.push_back(Recovered{pivot_col[r], std::move(rows[r].payload)});
    }
  }
  std::sort(determined.begin(), determined.end(),
            [](const Recovered& a, const Recovered& b) { return a.index < b.index; });
  return determined;
}

}  // namespace ltrelay
