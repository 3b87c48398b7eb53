#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gevpool/gev.hpp"
#include "gevpool/special.hpp"

namespace gevpool {

// Successive differences of the full parameter vectors along the subset:
// blocks of 4 for each consecutive pair, 4(k-1) entries total.
Eigen::VectorXd h_of_theta(const std::vector<ScaleGevParams>& theta_all,
                           const std::vector<int>& subset);

// Jacobian of h_of_theta wrt the stacked parameters of all D locations.
Eigen::MatrixXd jacobian_H(const std::vector<int>& subset, int n_locations);

// T = n * h' (H Sigma H')^{-1} h with 4(k-1) degrees of freedom.
double wald_statistic_ed(const std::vector<ScaleGevParams>& theta_all,
                         const Eigen::MatrixXd& sigma, const std::vector<int>& subset, int n);

// Successive differences of the scale free coordinates: all mu/sigma
// differences, then all gamma differences, then all alpha/mu differences.
Eigen::VectorXd g_of_theta_ls(const std::vector<ScaleGevParams>& theta_all,
                              const std::vector<int>& subset);

Eigen::MatrixXd jacobian_G_ls(const std::vector<ScaleGevParams>& theta_all,
                              const std::vector<int>& subset, int n_locations);

// T = n * g' (G Sigma G')^{-1} g with 3(k-1) degrees of freedom.
double wald_statistic_ls(const std::vector<ScaleGevParams>& theta_all,
                         const Eigen::MatrixXd& sigma, const std::vector<int>& subset, int n);

}  // namespace gevpool
