#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gevpool/rng.hpp"

namespace gevpool {

enum class MaxStableFamily { kSmith, kSchlather, kBrownResnick };
enum class BivariateFamily { kLogistic, kAsymmetricLogistic, kHuslerReiss };

std::string to_string(MaxStableFamily family);
std::string to_string(BivariateFamily family);
MaxStableFamily max_stable_family_from_string(const std::string& name);
BivariateFamily biv_family_from_string(const std::string& name);

std::vector<MaxStableFamily> default_max_stable_candidates();
std::vector<BivariateFamily> default_biv_candidates();

// params by family:
//   smith:          {cov11, cov12, cov22} of the Gaussian kernel (SPD)
//   schlather:      {range, smooth, nugget}, correlation (1-nugget)*exp(-(h/range)^smooth)
//   brown_resnick:  {range, smooth}, semivariogram (h/range)^smooth
struct MaxStableSpec {
  MaxStableFamily family = MaxStableFamily::kSmith;
  std::vector<double> params;
};

// params by family:
//   logistic:        {r} with r in (0,1]
//   asym_logistic:   {r, psi} with psi in [0,1]
//   husler_reiss:    {lambda} with lambda > 0
struct BivariateSpec {
  BivariateFamily family = BivariateFamily::kLogistic;
  std::vector<double> params;
};

struct MaxStableFit {
  MaxStableSpec spec;
  double pairwise_nll = 0.0;
  double clic = 0.0;
  bool converged = false;
  std::vector<std::string> warnings;
};

struct BivariateFit {
  BivariateSpec spec;
  double nll = 0.0;
  double aic = 0.0;
  bool converged = false;
  std::vector<std::string> warnings;
};

// Pairwise (composite) likelihood fit on a unit Frechet panel (years x sites).
MaxStableFit fit_max_stable(const Eigen::MatrixXd& frechet_panel, const Eigen::MatrixXd& coords,
                            MaxStableFamily family);

// Fits every candidate and returns the best one: converged fits are preferred,
// then smaller CLIC, then fewer parameters, then candidate order.
MaxStableFit select_max_stable(const Eigen::MatrixXd& frechet_panel, const Eigen::MatrixXd& coords,
                               const std::vector<MaxStableFamily>& candidates);

// Exact simulation via extremal functions; returns n x D with unit Frechet margins.
Eigen::MatrixXd simulate_max_stable(const MaxStableSpec& spec, const Eigen::MatrixXd& coords,
                                    int n, Rng& rng);

// Full maximum likelihood on a unit Frechet pair sample (years x 2).
BivariateFit fit_biv_ev(const Eigen::MatrixXd& pair, BivariateFamily family);
BivariateFit select_biv_ev(const Eigen::MatrixXd& pair,
                           const std::vector<BivariateFamily>& candidates);

// Conditional inversion sampler; returns n x 2 with unit Frechet margins.
Eigen::MatrixXd simulate_biv_ev(const BivariateSpec& spec, int n, Rng& rng);

// Pairwise extremal coefficient in [1,2] at the given spatial lag.
double extremal_coefficient(const MaxStableSpec& spec, const Eigen::Vector2d& lag);
double extremal_coefficient(const BivariateSpec& spec);

// Moment estimator: n / sum_t 1/max(y1, y2) for a unit Frechet pair.
double empirical_extremal_coefficient(const std::vector<double>& y1,
                                      const std::vector<double>& y2);

// Exponent function V and its partial derivatives, exposed for validation.
struct VFuncs {
  double v = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double v12 = 0.0;
};

// Husler-Reiss form shared by the smith / brown_resnick / husler_reiss pair
// distributions; `a` is the dependence scalar (larger means weaker dependence).
VFuncs hr_v_funcs(double z1, double z2, double a);
VFuncs schlather_v_funcs(double z1, double z2, double rho);
VFuncs biv_v_funcs(const BivariateSpec& spec, double z1, double z2);

double biv_log_density(const BivariateSpec& spec, double z1, double z2);

// P(Z2 <= z2 | Z1 = z1) for the bivariate EV distribution.
double biv_conditional_cdf(const BivariateSpec& spec, double z1, double z2);

// Log density of a max-stable pair at spatial lag `lag`.
double max_stable_pair_log_density(const MaxStableSpec& spec, const Eigen::Vector2d& lag,
                                   double y1, double y2);

}  // namespace gevpool
