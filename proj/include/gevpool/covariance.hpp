#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gevpool/fit.hpp"
#include "gevpool/panel.hpp"

namespace gevpool {

// Joint covariance of the per-location parameter estimates, a 4D x 4D matrix of
// 4 x 4 blocks in panel column order, already scaled for use as cov(theta_hat)*n.
struct SigmaEstimate {
  Eigen::MatrixXd sigma;
  std::vector<std::string> warnings;
};

// Sandwich estimator combining per-location information matrices with the
// empirical cross covariance of the standardized scores. `hessians` overrides
// the info matrices stored in `fits` when non-empty.
SigmaEstimate estimate_sigma(const BlockMaximaPanel& panel,
                             const std::vector<ScaleGevFit>& fits,
                             const std::vector<Eigen::Matrix4d>& hessians = {});

// Submatrix of sigma for the given location subset, blocks in subset order.
Eigen::MatrixXd pairwise_block(const Eigen::MatrixXd& sigma, const std::vector<int>& subset);

// Inverse that falls back to a pseudo-inverse when eigenvalues fall below
// 1e-12 times the largest one; appends a note to warnings when it does.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m, const std::string& label,
                            std::vector<std::string>* warnings);

}  // namespace gevpool
