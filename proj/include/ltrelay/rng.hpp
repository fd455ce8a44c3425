#pragma once

#include <array>
#include <cstdint>

namespace ltrelay {

/// Seed-mixing function (splitmix64 finalizer over seed + stream tag).
///
/// This is the published derivation contract for every secondary seed in
/// the project: Monte Carlo trial i runs with mix_seed(master_seed, i),
/// and a simulation run derives its encoder/channel/payload streams with
/// mix_seed(run_seed, tag). Changing it invalidates recorded traces.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** seeded through splitmix64.
///
/// Self-contained so that draw sequences are identical across platforms
/// and standard libraries. Each helper consumes exactly one 64-bit draw.
/// Streams are single-owner: concurrent users must each hold their own
/// instance (copies fork the sequence deterministically).
class Rng {
public:
  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  /// Independent stream derived from (seed, tag) via mix_seed().
  static Rng substream(std::uint64_t seed, std::uint64_t tag) noexcept {
    return Rng(mix_seed(seed, tag));
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double next_double() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n); requires n >= 1. Uses the widening
  /// multiply so every call costs one draw (bias < n / 2^64).
  std::uint64_t next_index(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// True with probability p; p = 0 never fires, p = 1 always does.
  bool next_bernoulli(double p) noexcept { return next_double() < p; }

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace ltrelay
