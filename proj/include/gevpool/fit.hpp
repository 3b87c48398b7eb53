#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gevpool/gev.hpp"
#include "gevpool/panel.hpp"

namespace gevpool {

struct ScaleGevFit {
  ScaleGevParams theta;
  double nll = 0.0;        // total negative log likelihood at theta
  bool converged = false;
  Eigen::Matrix4d info = Eigen::Matrix4d::Zero();  // Hessian of the mean nll
  int n = 0;
};

struct FitOptions {
  bool has_start = false;
  ScaleGevParams start;
  bool compute_info = true;
  int nm_max_evals = 400;
};

// Method of probability weighted moments on the raw series, used as a start.
GevParams pwm_initial_gev(const std::vector<double>& series);

// Maximum likelihood fit of the trend model. Requires at least 20 observations
// and a non-degenerate series.
ScaleGevFit fit_scale_gev(const std::vector<double>& series,
                          const std::vector<double>& covariate,
                          const FitOptions& options = FitOptions{});

// Single parameter vector fitted to all subset locations stacked together.
ScaleGevFit fit_pooled_scale_gev(const BlockMaximaPanel& panel,
                                 const std::vector<int>& subset,
                                 const FitOptions& options = FitOptions{});

// Null model with one location parameter per subset member and shared ratios:
// theta_d = (mu_d, mu_d / delta, gamma, eta * mu_d).
struct LsNullFit {
  std::vector<ScaleGevParams> thetas;
  double nll = 0.0;
  bool converged = false;
};

LsNullFit fit_ls_null_scale_gev(const BlockMaximaPanel& panel,
                                const std::vector<int>& subset,
                                const std::vector<ScaleGevFit>* location_fits = nullptr);

// Gradient of the mean negative log likelihood (analytic).
Eigen::Vector4d mean_nll_gradient(const std::vector<double>& series,
                                  const std::vector<double>& covariate,
                                  const ScaleGevParams& theta);

// Hessian of the mean negative log likelihood from the analytic per-point Hessians.
Eigen::Matrix4d analytic_info(const std::vector<double>& series,
                              const std::vector<double>& covariate,
                              const ScaleGevParams& theta);

// Central finite differences of the analytic gradient; falls back to the
// analytic Hessian when a perturbed evaluation leaves the support.
Eigen::Matrix4d numeric_info(const std::vector<double>& series,
                             const std::vector<double>& covariate,
                             const ScaleGevParams& theta);

}  // namespace gevpool
