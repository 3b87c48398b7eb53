#include "gevpool/return_levels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gevpool {

double local_rl(const ScaleGevParams& theta, double T, double reference_c) {
  if (!(T > 1.0)) throw std::invalid_argument("local_rl: return period must exceed 1");
  return gev_quantile(1.0 - 1.0 / T, effective_params(theta, reference_c));
}

double type7_quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("type7_quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("type7_quantile: probability outside [0, 1]");
  }
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(std::min(h, static_cast<double>(n - 2)));
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double type7_cdf(const std::vector<double>& sorted, double x) {
  if (sorted.empty()) throw std::invalid_argument("type7_cdf: empty sample");
  const std::size_t n = sorted.size();
  if (x <= sorted.front()) return 0.0;
  if (x >= sorted.back()) return 1.0;
  // first index with sorted[i] > x; x lies in [sorted[i-1], sorted[i])
  const std::size_t i = static_cast<std::size_t>(
      std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
  const double lo = sorted[i - 1];
  const double hi = sorted[i];
  const double frac = hi > lo ? (x - lo) / (hi - lo) : 0.0;
  return (static_cast<double>(i - 1) + frac) / static_cast<double>(n - 1);
}

RegionalEstimate regional_rl_rp(const ScaleGevParams& pooled_fit, const MaxStableSpec& dependence,
                                const Eigen::MatrixXd& coords, const ReturnSpec& spec, int B_sim,
                                Rng& rng) {
  if (!(spec.T > 1.0)) throw std::invalid_argument("regional_rl_rp: return period must exceed 1");
  if (B_sim < 1) throw std::invalid_argument("regional_rl_rp: B_sim must be at least 1");
  if (coords.rows() < 1 || coords.cols() != 2) {
    throw std::invalid_argument("regional_rl_rp: coords must be a non-empty k x 2 matrix");
  }

  RegionalEstimate est;
  est.B_sim = B_sim;
  est.local = local_rl(pooled_fit, spec.T, spec.reference_c);
  if (B_sim < 1000) {
    est.warnings.push_back("B_sim below 1000, regional estimates will be noisy");
  }

  const int k = static_cast<int>(coords.rows());
  const Eigen::MatrixXd fields = simulate_max_stable(dependence, coords, B_sim, rng);
  const std::vector<double> cref(static_cast<std::size_t>(B_sim), spec.reference_c);
  std::vector<double> region_max(static_cast<std::size_t>(B_sim),
                                 -std::numeric_limits<double>::infinity());
  std::vector<double> ycol(static_cast<std::size_t>(B_sim));
  for (int d = 0; d < k; ++d) {
    for (int t = 0; t < B_sim; ++t) ycol[static_cast<std::size_t>(t)] = fields(t, d);
    const std::vector<double> x = from_frechet(ycol, cref, pooled_fit);
    for (int t = 0; t < B_sim; ++t) {
      auto& m = region_max[static_cast<std::size_t>(t)];
      m = std::max(m, x[static_cast<std::size_t>(t)]);
    }
  }
  std::sort(region_max.begin(), region_max.end());

  est.rl_regional = type7_quantile(region_max, 1.0 - 1.0 / spec.T);

  const double r = spec.has_r ? spec.r : est.local;
  const double cdf_at_r = type7_cdf(region_max, r);
  if (cdf_at_r >= 1.0 - 1.0 / static_cast<double>(B_sim)) {
    est.rp_regional = static_cast<double>(B_sim);
    est.warnings.push_back("return period capped at B_sim, beyond the simulation resolution");
  } else {
    est.rp_regional = 1.0 / (1.0 - cdf_at_r);
  }

  est.cdf_probs = {0.5, 0.9, 0.95, 0.99, 0.999};
  for (double p : est.cdf_probs) est.cdf_values.push_back(type7_quantile(region_max, p));
  return est;
}

}  // namespace gevpool
