#include "ltrelay/decoder.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <utility>

namespace ltrelay {

PeelingDecoder::PeelingDecoder(std::uint32_t k, std::uint32_t symbol_size)
    : k_(k), symbol_size_(symbol_size) {
  if (k < 1) throw std::invalid_argument("decoder needs k >= 1");
  if (symbol_size < 1) throw std::invalid_argument("decoder needs symbol_size >= 1");
  recovered_data_.resize(static_cast<std::size_t>(k) * symbol_size, 0);
  recovered_flag_.assign(k, 0);
  by_neighbor_.resize(k);
}

bool PeelingDecoder::is_recovered(std::uint32_t index) const {
  if (index >= k_) throw std::out_of_range("source index outside 0..k-1");
  return recovered_flag_[index] != 0;
}

std::span<const std::uint8_t> PeelingDecoder::payload(std::uint32_t index) const {
  if (!is_recovered(index)) {
    throw std::logic_error("payload requested for an unrecovered index");
  }
  return {recovered_data_.data() + static_cast<std::size_t>(index) * symbol_size_,
          symbol_size_};
}

std::vector<Recovered> PeelingDecoder::ingest(const CodedSymbol& sym) {
  if (sym.neighbors.empty()) {
    throw std::invalid_argument("malformed symbol: empty neighbor list");
  }
  if (sym.payload.size() != symbol_size_) {
    throw std::invalid_argument("malformed symbol: payload length mismatch");
  }
  for (std::size_t i = 0; i < sym.neighbors.size(); ++i) {
    if (sym.neighbors[i] >= k_) {
      throw std::invalid_argument("malformed symbol: neighbor outside 0..k-1");
    }
    if (i > 0 && sym.neighbors[i] <= sym.neighbors[i - 1]) {
      throw std::invalid_argument("malformed symbol: neighbors not sorted distinct");
    }
  }

  // Eager reduction against everything already recovered.
  std::vector<std::uint32_t> remaining;
  remaining.reserve(sym.neighbors.size());
  std::vector<std::uint8_t> payload = sym.payload;
  for (std::uint32_t index : sym.neighbors) {
    if (recovered_flag_[index]) {
      const auto* known = recovered_data_.data() +
                          static_cast<std::size_t>(index) * symbol_size_;
      for (std::uint32_t b = 0; b < symbol_size_; ++b) payload[b] ^= known[b];
    } else {
      remaining.push_back(index);
    }
  }

  std::vector<Recovered> newly;
  if (remaining.empty()) {
    return newly;  // duplicate information, nothing left
  }
  if (remaining.size() == 1) {
    resolve(remaining[0], std::move(payload), newly);
    return newly;
  }

  std::uint32_t slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
  } else {
    slot = static_cast<std::uint32_t>(pending_.size());
    pending_.emplace_back();
  }
  for (std::uint32_t index : remaining) by_neighbor_[index].push_back(slot);
  pending_[slot].neighbors = std::move(remaining);
  pending_[slot].payload = std::move(payload);
  ++pending_count_;
  return newly;
}

void PeelingDecoder::resolve(std::uint32_t index, std::vector<std::uint8_t> payload,
                             std::vector<Recovered>& newly) {
  std::deque<std::pair<std::uint32_t, std::vector<std::uint8_t>>> ripple;
  ripple.emplace_back(index, std::move(payload));

  while (!ripple.empty()) {
    auto [current, value] = std::move(ripple.front());
    ripple.pop_front();
    if (recovered_flag_[current]) {
      continue;  // recovered through another path during this cascade
    }
    recovered_flag_[current] = 1;
    ++recovered_count_;
    std::copy(value.begin(), value.end(),
              recovered_data_.begin() + static_cast<std::size_t>(current) * symbol_size_);
    newly.push_back(Recovered{current, std::move(value)});

    // Strip `current` from every stored symbol that references it.
    for (std::uint32_t slot : by_neighbor_[current]) {
      PendingSymbol& stored = pending_[slot];
      if (stored.neighbors.empty()) continue;  // already consumed
      auto it = std::find(stored.neighbors.begin(), stored.neighbors.end(), current);
      if (it == stored.neighbors.end()) continue;
      stored.neighbors.erase(it);
      const auto* known = recovered_data_.data() +
                          static_cast<std::size_t>(current) * symbol_size_;
      for (std::uint32_t b = 0; b < symbol_size_; ++b) stored.payload[b] ^= known[b];

      if (stored.neighbors.size() == 1) {
        ripple.emplace_back(stored.neighbors[0], std::move(stored.payload));
        stored.neighbors.clear();
        stored.payload.clear();
        free_slots_.push_back(slot);
        --pending_count_;
      }
    }
    by_neighbor_[current].clear();
  }
}

}  // namespace ltrelay
