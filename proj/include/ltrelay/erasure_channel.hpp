#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "ltrelay/rng.hpp"
#include "ltrelay/symbols.hpp"

namespace ltrelay {

/// Memoryless packet-erasure channel: each transmission is dropped i.i.d.
/// with probability eps. Exactly one RNG draw is consumed per call, whether
/// or not the packet survives, so traces stay reproducible slot-for-slot.
class ErasureChannel {
public:
  ErasureChannel(double eps, Rng rng) : eps_(eps), rng_(std::move(rng)) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
      throw std::invalid_argument("erasure probability must lie in [0, 1]");
    }
  }

  double eps() const { return eps_; }

  /// Delivers the symbol or swallows it. The symbol is passed by value so
  /// a delivered packet moves straight through.
  std::optional<CodedSymbol> transmit(CodedSymbol sym) {
    if (erases_next()) return std::nullopt;
    return std::optional<CodedSymbol>(std::move(sym));
  }

  /// Draws the next erasure decision without needing a symbol.
  bool erases_next() { return rng_.next_bernoulli(eps_); }

private:
  double eps_;
  Rng rng_;
};

}  // namespace ltrelay
