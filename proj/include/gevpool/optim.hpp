#pragma once

#include <Eigen/Dense>
#include <functional>

namespace gevpool {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;
using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct SimplexResult {
  Eigen::VectorXd x;
  double fval = 0.0;
  int evals = 0;
  bool converged = false;
};

// Nelder-Mead minimization. `step` sets the initial simplex edge per
// coordinate. Objective may return +inf to encode infeasible points.
SimplexResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                          const Eigen::VectorXd& step, int max_evals = 500,
                          double ftol_rel = 1e-10);

struct QuasiNewtonResult {
  Eigen::VectorXd x;
  double fval = 0.0;
  Eigen::VectorXd grad;
  int iters = 0;
  bool converged = false;
};

// BFGS with backtracking line search. Infeasible trial points (f = +inf)
// shorten the step. Convergence on sup-norm of the gradient.
QuasiNewtonResult bfgs(const ObjectiveFn& f, const GradientFn& g,
                       const Eigen::VectorXd& x0, int max_iters = 100,
                       double gtol = 1e-7);

}  // namespace gevpool
