#include "ltrelay/symbols.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltrelay {

SourceBlock::SourceBlock(std::uint32_t k, std::uint32_t symbol_size)
    : k_(k), symbol_size_(symbol_size) {
  if (k < 1) throw std::invalid_argument("source block needs k >= 1");
  if (symbol_size < 1) throw std::invalid_argument("source block needs symbol_size >= 1");
  data_.resize(static_cast<std::size_t>(k) * symbol_size, 0);
}

SourceBlock SourceBlock::random(std::uint32_t k, std::uint32_t symbol_size, Rng& rng) {
  SourceBlock block(k, symbol_size);
  for (auto& byte : block.data_) {
    byte = static_cast<std::uint8_t>(rng.next_u64());
  }
  return block;
}

std::span<const std::uint8_t> SourceBlock::payload(std::uint32_t index) const {
  if (index >= k_) throw std::out_of_range("source index outside 0..k-1");
  return {data_.data() + static_cast<std::size_t>(index) * symbol_size_, symbol_size_};
}

void SourceBlock::set_payload(std::uint32_t index, std::span<const std::uint8_t> bytes) {
  if (index >= k_) throw std::out_of_range("source index outside 0..k-1");
  if (bytes.size() != symbol_size_) {
    throw std::invalid_argument("payload length does not match symbol_size");
  }
  std::copy(bytes.begin(), bytes.end(),
            data_.begin() + static_cast<std::size_t>(index) * symbol_size_);
}

std::string dump_symbol(const CodedSymbol& sym) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string line = std::to_string(sym.seq);
  line += ' ';
  for (std::size_t i = 0; i < sym.neighbors.size(); ++i) {
    if (i != 0) line += ',';
    line += std::to_string(sym.neighbors[i]);
  }
  line += ' ';
  for (std::uint8_t byte : sym.payload) {
    line += kHex[byte >> 4];
    line += kHex[byte & 0xf];
  }
  return line;
}

}  // namespace ltrelay
