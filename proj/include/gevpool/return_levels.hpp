#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gevpool/dependence.hpp"
#include "gevpool/gev.hpp"
#include "gevpool/rng.hpp"

namespace gevpool {

// Level exceeded with probability 1/T per block in the reference climate.
double local_rl(const ScaleGevParams& theta, double T, double reference_c);

struct ReturnSpec {
  double T = 100.0;        // return period in blocks, must exceed 1
  bool has_r = false;      // when set, rp_regional is evaluated at r
  double r = 0.0;          // event magnitude; defaults to the local level at T
  double reference_c = 0.0;
};

struct RegionalEstimate {
  double local = 0.0;        // local return level at (T, reference_c)
  double rl_regional = 0.0;  // level exceeded somewhere in the region once per T blocks
  double rp_regional = 0.0;  // blocks between exceedances of r anywhere in the region
  int B_sim = 0;
  std::vector<double> cdf_probs;   // summary grid of the simulated regional maxima
  std::vector<double> cdf_values;
  std::vector<std::string> warnings;
};

// Interpolated order statistic at probability q; values must be sorted ascending.
double type7_quantile(const std::vector<double>& sorted, double q);

// Inverse of type7_quantile: interpolated empirical probability of x.
double type7_cdf(const std::vector<double>& sorted, double x);

// Simulates B_sim fields from the dependence model, maps every margin through
// the pooled fit at reference_c, and summarizes the distribution of the
// regionwise maximum. The return period is capped at B_sim, beyond the
// resolution of the simulation.
RegionalEstimate regional_rl_rp(const ScaleGevParams& pooled_fit, const MaxStableSpec& dependence,
                                const Eigen::MatrixXd& coords, const ReturnSpec& spec, int B_sim,
                                Rng& rng);

}  // namespace gevpool
