#include "ltrelay/degree_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ltrelay {

DegreeDistribution::DegreeDistribution(std::uint32_t k, std::vector<double> pmf,
                                       std::vector<double> cdf)
    : k_(k), pmf_(std::move(pmf)), cdf_(std::move(cdf)) {}

DegreeDistribution DegreeDistribution::from_pmf(std::vector<double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("degree distribution needs at least degree 1");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("degree weights must be finite and non-negative");
    }
    total += w;
  }
  if (total <= 0.0) {
    throw std::invalid_argument("degree weights must have positive mass");
  }

  const auto k = static_cast<std::uint32_t>(weights.size());
  for (double& w : weights) w /= total;

  std::vector<double> cdf(weights.size());
  double run = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    run += weights[i];
    cdf[i] = run;
  }
  // Pin the top so sampling and n*cdf(k) >= k checks have an exact 1.
  cdf.back() = 1.0;
  return DegreeDistribution(k, std::move(weights), std::move(cdf));
}

double DegreeDistribution::pmf(std::uint32_t degree) const {
  if (degree < 1 || degree > k_) {
    throw std::out_of_range("degree outside 1..k");
  }
  return pmf_[degree - 1];
}

double DegreeDistribution::cdf(std::uint32_t degree) const {
  if (degree < 1 || degree > k_) {
    throw std::out_of_range("degree outside 1..k");
  }
  return cdf_[degree - 1];
}

std::uint32_t DegreeDistribution::sample(Rng& rng) const noexcept {
  const double u = rng.next_double();
  // First entry strictly above u; u < 1 = cdf(k), so this never runs off
  // the end, and zero-mass bins are skipped because their cdf value
  // equals their predecessor's.
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return k_;
  return static_cast<std::uint32_t>(it - cdf_.begin()) + 1;
}

DegreeDistribution ideal_soliton(std::uint32_t k) {
  if (k < 2) {
    throw std::invalid_argument("ideal soliton requires k >= 2");
  }
  std::vector<double> weights(k);
  weights[0] = 1.0 / static_cast<double>(k);
  for (std::uint32_t d = 2; d <= k; ++d) {
    weights[d - 1] = 1.0 / (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return DegreeDistribution::from_pmf(std::move(weights));
}

DegreeDistribution robust_soliton(std::uint32_t k, double c, double delta) {
  if (k < 2) {
    throw std::invalid_argument("robust soliton requires k >= 2");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("robust soliton requires c > 0");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("robust soliton requires delta in (0,1)");
  }

  const double kd = static_cast<double>(k);
  const double ratio = c * std::log(kd / delta) * std::sqrt(kd);  // Luby's R
  const double spike_real = std::ceil(kd / ratio);
  if (!(spike_real >= 1.0) || spike_real > kd) {
    throw std::invalid_argument(
        "invalid distribution parameters: robust soliton spike index falls outside 1..k");
  }
  const auto spike = static_cast<std::uint32_t>(spike_real);

  std::vector<double> weights(k);
  weights[0] = 1.0 / kd;
  for (std::uint32_t d = 2; d <= k; ++d) {
    weights[d - 1] = 1.0 / (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  for (std::uint32_t d = 1; d < spike; ++d) {
    weights[d - 1] += ratio / (static_cast<double>(d) * kd);
  }
  weights[spike - 1] += ratio * std::log(ratio / delta) / kd;

  // from_pmf's normalization divides by the raw mass, which is exactly
  // Luby's beta here.
  return DegreeDistribution::from_pmf(std::move(weights));
}

std::uint64_t first_stage_length(const DegreeDistribution& dist) {
  double low_mass = dist.pmf(1);
  if (dist.k() >= 2) low_mass += dist.pmf(2);
  if (!(low_mass > 0.0)) {
    throw std::domain_error("degenerate distribution: no mass on degrees 1 and 2");
  }

  const double kd = static_cast<double>(dist.k());
  auto n = static_cast<std::uint64_t>(std::floor(kd / low_mass));
  while (static_cast<double>(n) * low_mass < kd) ++n;
  while (n > 1 && static_cast<double>(n - 1) * low_mass >= kd) --n;
  return n;
}

std::optional<std::uint32_t> optimal_memory_order(const DegreeDistribution& dist,
                                                  std::uint64_t n) {
  if (n < 1) {
    throw std::invalid_argument("optimal_memory_order requires n >= 1");
  }
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(dist.k());
  for (std::uint32_t i = 1; i <= dist.k(); ++i) {
    if (nd * dist.cdf(i) >= kd) return i;
  }
  return std::nullopt;  // n * 1 < k
}

}  // namespace ltrelay
