#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ltrelay/rng.hpp"

namespace ltrelay {

/// Probability mass over output-symbol degrees 1..k, plus the cumulative
/// table used for inverse-CDF sampling.
///
/// Immutable after construction and safe to share across threads.
/// Invariants: every entry >= 0, the mass sums to 1 (within 1e-12) and
/// the final cdf entry is exactly 1.
class DegreeDistribution {
public:
  /// Builds a distribution from raw per-degree weights (index 0 holds
  /// degree 1). Weights are normalized; they must be finite, >= 0, and
  /// have positive sum.
  static DegreeDistribution from_pmf(std::vector<double> weights);

  std::uint32_t k() const noexcept { return k_; }

  /// P(degree = d), 1-based.
  double pmf(std::uint32_t degree) const;
  /// P(degree <= d), 1-based; cdf(k) == 1 exactly.
  double cdf(std::uint32_t degree) const;

  const std::vector<double>& pmf_table() const noexcept { return pmf_; }

  /// Inverse-CDF sample; consumes exactly one draw from `rng`.
  std::uint32_t sample(Rng& rng) const noexcept;

private:
  DegreeDistribution(std::uint32_t k, std::vector<double> pmf, std::vector<double> cdf);

  std::uint32_t k_;
  std::vector<double> pmf_;  // pmf_[d-1] = P(degree = d)
  std::vector<double> cdf_;
};

/// Ideal soliton over 1..k: pmf(1) = 1/k, pmf(d) = 1/(d(d-1)). Requires k >= 2.
DegreeDistribution ideal_soliton(std::uint32_t k);

/// Robust soliton over 1..k (Luby construction):
///   R = c ln(k/delta) sqrt(k),  spike at ceil(k/R),
///   tau(d) = R/(dk) below the spike, R ln(R/delta)/k at it, 0 above,
///   pmf = (rho + tau) / beta with beta the total raw mass.
/// Requires k >= 2, c > 0, delta in (0,1); rejects parameters whose
/// spike index falls outside 1..k.
DegreeDistribution robust_soliton(std::uint32_t k, double c, double delta);

/// Smallest N with N * (pmf(1) + pmf(2)) >= k: the length of the sorted
/// first stage used by the amicable encoder. Throws if that mass is zero.
std::uint64_t first_stage_length(const DegreeDistribution& dist);

/// Smallest order i with n * cdf(i) >= k, or nullopt when even i = k
/// fails (that is, when n < k).
std::optional<std::uint32_t> optimal_memory_order(const DegreeDistribution& dist,
                                                  std::uint64_t n);

}  // namespace ltrelay
