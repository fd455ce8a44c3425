#include "ltrelay/encoder.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ltrelay {

std::string to_string(EncoderVariant variant) {
  switch (variant) {
    case EncoderVariant::PlainLt: return "plain";
    case EncoderVariant::Mblte: return "mblte";
    case EncoderVariant::AmicableMblte: return "amicable";
    case EncoderVariant::DynamicRelay: return "dynamic";
  }
  return "unknown";
}

EncoderVariant parse_encoder_variant(const std::string& name) {
  if (name == "plain") return EncoderVariant::PlainLt;
  if (name == "mblte") return EncoderVariant::Mblte;
  if (name == "amicable") return EncoderVariant::AmicableMblte;
  if (name == "dynamic") return EncoderVariant::DynamicRelay;
  throw std::invalid_argument("unknown encoder variant: " + name);
}

LtEncoder::LtEncoder(EncoderVariant variant, DegreeDistribution dist)
    : variant_(variant), dist_(std::move(dist)) {
  const std::uint32_t k = dist_.k();
  inst_degree_.assign(k, 0);
  in_s1_.assign(k, 0);
  if (variant_ == EncoderVariant::DynamicRelay) {
    in_eligible_.assign(k, 0);
    // universe_ starts empty and tracks the eligible set
  } else {
    universe_.resize(k);
    std::iota(universe_.begin(), universe_.end(), 0);
  }
}

LtEncoder LtEncoder::plain(DegreeDistribution dist) {
  return LtEncoder(EncoderVariant::PlainLt, std::move(dist));
}

LtEncoder LtEncoder::mblte(DegreeDistribution dist) {
  return LtEncoder(EncoderVariant::Mblte, std::move(dist));
}

LtEncoder LtEncoder::amicable(DegreeDistribution dist, Rng& rng) {
  LtEncoder enc(EncoderVariant::AmicableMblte, std::move(dist));
  const std::uint64_t stage = first_stage_length(enc.dist_);
  enc.stage_degrees_.reserve(stage);
  for (std::uint64_t i = 0; i < stage; ++i) {
    enc.stage_degrees_.push_back(enc.dist_.sample(rng));
  }
  std::sort(enc.stage_degrees_.begin(), enc.stage_degrees_.end());
  return enc;
}

LtEncoder LtEncoder::dynamic_relay(DegreeDistribution dist) {
  return LtEncoder(EncoderVariant::DynamicRelay, std::move(dist));
}

std::span<const std::uint32_t> LtEncoder::stage_degrees() const noexcept {
  return {stage_degrees_.data() + stage_next_, stage_degrees_.size() - stage_next_};
}

std::uint32_t LtEncoder::instantaneous_degree(std::uint32_t index) const {
  if (index >= k()) throw std::out_of_range("source index outside 0..k-1");
  return inst_degree_[index];
}

std::vector<std::uint32_t> LtEncoder::s1() const {
  std::vector<std::uint32_t> out(s1_list_);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> LtEncoder::eligible() const {
  if (variant_ != EncoderVariant::DynamicRelay) {
    return {};  // whole block is always encodable; the set is not tracked
  }
  std::vector<std::uint32_t> out(universe_.begin(), universe_.end());
  std::sort(out.begin(), out.end());
  return out;
}

void LtEncoder::grow_eligible(std::span<const std::uint32_t> newly) {
  if (variant_ != EncoderVariant::DynamicRelay) {
    throw std::logic_error("grow_eligible requires the dynamic-relay variant");
  }
  for (std::uint32_t index : newly) {
    if (index >= k()) {
      throw std::invalid_argument("eligible index outside 0..k-1");
    }
    if (in_eligible_[index]) {
      throw std::invalid_argument("index already eligible");
    }
  }
  for (std::uint32_t index : newly) {
    in_eligible_[index] = 1;
    universe_.push_back(index);
  }
}

std::uint32_t LtEncoder::acquire_degree(Rng& rng) {
  if (variant_ == EncoderVariant::AmicableMblte && stage_next_ < stage_degrees_.size()) {
    return stage_degrees_[stage_next_++];
  }
  return dist_.sample(rng);
}

std::optional<CodedSymbol> LtEncoder::encode_next(const SourceBlock& block, Rng& rng) {
  if (variant_ == EncoderVariant::DynamicRelay && universe_.empty()) {
    return std::nullopt;
  }
  const std::uint32_t degree = acquire_degree(rng);
  return encode_with_degree(block, degree, rng);
}

CodedSymbol LtEncoder::encode_with_degree(const SourceBlock& block, std::uint32_t degree,
                                          Rng& rng) {
  if (block.k() != k()) {
    throw std::invalid_argument("source block size does not match encoder k");
  }
  if (degree < 1) {
    throw std::invalid_argument("degree must be >= 1");
  }
  if (variant_ == EncoderVariant::DynamicRelay && universe_.empty()) {
    throw std::logic_error("dynamic-relay encoder has an empty eligible set");
  }
  degree = std::min<std::uint32_t>(degree, k());
  if (variant_ == EncoderVariant::DynamicRelay) {
    degree = std::min<std::uint32_t>(degree, static_cast<std::uint32_t>(universe_.size()));
  }
  return finish_symbol(block, select_neighbors(degree, rng));
}

std::vector<std::uint32_t> LtEncoder::select_neighbors(std::uint32_t degree, Rng& rng) {
  if (variant_ == EncoderVariant::PlainLt || degree >= 3) {
    return select_uniform(degree, rng);
  }
  if (degree == 1) {
    const std::uint32_t pick = argmax_outside_s1(std::nullopt, rng);
    insert_s1(pick);
    return {pick};
  }
  // degree == 2; an empty S1 degrades to the uniform rule
  if (s1_list_.empty()) {
    return select_uniform(2, rng);
  }
  const std::uint32_t first = s1_list_[rng.next_index(s1_list_.size())];
  const std::uint32_t second = argmax_outside_s1(first, rng);
  insert_s1(second);
  return {first, second};
}

// d distinct uniform picks: partial Fisher-Yates over the persistent
// universe permutation, one draw per pick.
std::vector<std::uint32_t> LtEncoder::select_uniform(std::uint32_t degree, Rng& rng) {
  const auto size = static_cast<std::uint32_t>(universe_.size());
  std::vector<std::uint32_t> picks(degree);
  for (std::uint32_t j = 0; j < degree; ++j) {
    const auto offset = static_cast<std::uint32_t>(rng.next_index(size - j));
    std::swap(universe_[j], universe_[j + offset]);
    picks[j] = universe_[j];
  }
  return picks;
}

// Highest instantaneous degree among universe members outside S1 (and not
// `excluded`), ties broken uniformly with one draw; falls back to a
// uniform pick when every candidate is excluded.
std::uint32_t LtEncoder::argmax_outside_s1(std::optional<std::uint32_t> excluded, Rng& rng) {
  std::uint32_t best = 0;
  std::uint64_t ties = 0;
  for (std::uint32_t index : universe_) {
    if (in_s1_[index] || (excluded && index == *excluded)) continue;
    if (ties == 0 || inst_degree_[index] > best) {
      best = inst_degree_[index];
      ties = 1;
    } else if (inst_degree_[index] == best) {
      ++ties;
    }
  }
  if (ties == 0) {
    return uniform_pick(excluded, rng);  // exclusion exhausted
  }
  std::uint64_t target = rng.next_index(ties);
  for (std::uint32_t index : universe_) {
    if (in_s1_[index] || (excluded && index == *excluded)) continue;
    if (inst_degree_[index] == best && target-- == 0) return index;
  }
  return universe_.back();  // unreachable
}

std::uint32_t LtEncoder::uniform_pick(std::optional<std::uint32_t> excluded, Rng& rng) {
  for (;;) {
    const std::uint32_t pick = universe_[rng.next_index(universe_.size())];
    if (!excluded || pick != *excluded) return pick;
  }
}

void LtEncoder::insert_s1(std::uint32_t index) {
  if (!in_s1_[index]) {
    in_s1_[index] = 1;
    s1_list_.push_back(index);
  }
}

CodedSymbol LtEncoder::finish_symbol(const SourceBlock& block,
                                     std::vector<std::uint32_t> neighbors) {
  CodedSymbol sym;
  sym.seq = emitted_++;
  std::sort(neighbors.begin(), neighbors.end());
  sym.payload.assign(block.symbol_size(), 0);
  for (std::uint32_t index : neighbors) {
    ++inst_degree_[index];
    const auto bytes = block.payload(index);
    for (std::uint32_t b = 0; b < block.symbol_size(); ++b) {
      sym.payload[b] ^= bytes[b];
    }
  }
  sym.neighbors = std::move(neighbors);
  return sym;
}

}  // namespace ltrelay
