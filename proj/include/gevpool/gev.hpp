#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gevpool {

// |gamma| below this switches every formula to its Gumbel limit
inline constexpr double kGumbelEps = 1e-6;

// floor applied to the positive part inside to_frechet
inline constexpr double kFrechetFloor = 1e-10;

struct GevParams {
  double mu = 0.0;
  double sigma = 1.0;
  double gamma = 0.0;
};

// Trend model: at covariate value c the effective parameters are
// (mu * e^{alpha c / mu}, sigma * e^{alpha c / mu}, gamma).
// Parameter space: mu > 0, sigma > 0.
struct ScaleGevParams {
  double mu = 1.0;
  double sigma = 1.0;
  double gamma = 0.0;
  double alpha = 0.0;
};

double gev_cdf(double x, const GevParams& p);

// inverse cdf; q must lie strictly inside (0,1)
double gev_quantile(double q, const GevParams& p);

// log density; -inf outside the support
double gev_log_density(double x, const GevParams& p);

GevParams effective_params(const ScaleGevParams& theta, double c);

double scale_gev_log_density(double x, double c, const ScaleGevParams& theta);

// gradient and Hessian of the standardized log density wrt (mu, sigma, gamma),
// evaluated at (0, 1, gamma) with observation z
Eigen::Vector3d std_gev_score(double z, double gamma);
Eigen::Matrix3d std_gev_hessian(double z, double gamma);

// transposed Jacobian of (mu, sigma, gamma, alpha) -> effective (mu(c), sigma(c), gamma);
// rows index the model parameters, columns the effective ones
Eigen::Matrix<double, 4, 3> effective_param_jacobian(const ScaleGevParams& theta, double c);

// analytic gradient / Hessian of scale_gev_log_density wrt (mu, sigma, gamma, alpha);
// throws std::domain_error when x is not strictly inside the support
Eigen::Vector4d scale_gev_score(double x, double c, const ScaleGevParams& theta);
Eigen::Matrix4d scale_gev_hessian(double x, double c, const ScaleGevParams& theta);

// margin transforms between the fitted trend model and unit Frechet
std::vector<double> to_frechet(const std::vector<double>& m,
                               const std::vector<double>& covariate,
                               const ScaleGevParams& theta);
std::vector<double> from_frechet(const std::vector<double>& y,
                                 const std::vector<double>& covariate,
                                 const ScaleGevParams& theta);

}  // namespace gevpool
