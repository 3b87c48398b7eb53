#include "gevpool/wald.hpp"

#include <stdexcept>

#include "gevpool/covariance.hpp"

namespace gevpool {

namespace {

void check_subset_pairs(const std::vector<int>& subset, int n_locations) {
  if (subset.size() < 2) {
    throw std::invalid_argument("wald: subset needs at least two locations");
  }
  for (int idx : subset) {
    if (idx < 0 || idx >= n_locations) {
      throw std::invalid_argument("wald: subset index out of range");
    }
  }
}

Eigen::Vector4d as_vector(const ScaleGevParams& t) {
  Eigen::Vector4d v;
  v << t.mu, t.sigma, t.gamma, t.alpha;
  return v;
}

double quadratic_form(const Eigen::VectorXd& h, const Eigen::MatrixXd& jac,
                      const Eigen::MatrixXd& sigma, int n) {
  if (sigma.rows() != jac.cols() || sigma.cols() != jac.cols()) {
    throw std::invalid_argument("wald: sigma shape does not match jacobian");
  }
  const Eigen::MatrixXd mid = jac * sigma * jac.transpose();
  const Eigen::MatrixXd mid_inv = spd_inverse(mid, "wald covariance", nullptr);
  return static_cast<double>(n) * h.dot(mid_inv * h);
}

}  // namespace

Eigen::VectorXd h_of_theta(const std::vector<ScaleGevParams>& theta_all,
                           const std::vector<int>& subset) {
  check_subset_pairs(subset, static_cast<int>(theta_all.size()));
  const int k = static_cast<int>(subset.size());
  Eigen::VectorXd h(4 * (k - 1));
  for (int i = 0; i + 1 < k; ++i) {
    const Eigen::Vector4d diff = as_vector(theta_all[static_cast<std::size_t>(subset[static_cast<std::size_t>(i + 1)])]) -
                                 as_vector(theta_all[static_cast<std::size_t>(subset[static_cast<std::size_t>(i)])]);
    h.segment(4 * i, 4) = diff;
  }
  return h;
}

Eigen::MatrixXd jacobian_H(const std::vector<int>& subset, int n_locations) {
  check_subset_pairs(subset, n_locations);
  const int k = static_cast<int>(subset.size());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(4 * (k - 1), 4 * n_locations);
  for (int i = 0; i + 1 < k; ++i) {
    for (int r = 0; r < 4; ++r) {
      jac(4 * i + r, 4 * subset[static_cast<std::size_t>(i + 1)] + r) = 1.0;
      jac(4 * i + r, 4 * subset[static_cast<std::size_t>(i)] + r) = -1.0;
    }
  }
  return jac;
}

double wald_statistic_ed(const std::vector<ScaleGevParams>& theta_all,
                         const Eigen::MatrixXd& sigma, const std::vector<int>& subset, int n) {
  const Eigen::VectorXd h = h_of_theta(theta_all, subset);
  const Eigen::MatrixXd jac = jacobian_H(subset, static_cast<int>(theta_all.size()));
  return quadratic_form(h, jac, sigma, n);
}

Eigen::VectorXd g_of_theta_ls(const std::vector<ScaleGevParams>& theta_all,
                              const std::vector<int>& subset) {
  check_subset_pairs(subset, static_cast<int>(theta_all.size()));
  const int k = static_cast<int>(subset.size());
  const int m = k - 1;
  Eigen::VectorXd g(3 * m);
  for (int i = 0; i < m; ++i) {
    const ScaleGevParams& a = theta_all[static_cast<std::size_t>(subset[static_cast<std::size_t>(i)])];
    const ScaleGevParams& b = theta_all[static_cast<std::size_t>(subset[static_cast<std::size_t>(i + 1)])];
    g(i) = b.mu / b.sigma - a.mu / a.sigma;
    g(m + i) = b.gamma - a.gamma;
    g(2 * m + i) = b.alpha / b.mu - a.alpha / a.mu;
  }
  return g;
}

Eigen::MatrixXd jacobian_G_ls(const std::vector<ScaleGevParams>& theta_all,
                              const std::vector<int>& subset, int n_locations) {
  check_subset_pairs(subset, n_locations);
  if (static_cast<int>(theta_all.size()) != n_locations) {
    throw std::invalid_argument("wald: theta_all size does not match n_locations");
  }
  const int k = static_cast<int>(subset.size());
  const int m = k - 1;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(3 * m, 4 * n_locations);
  for (int i = 0; i < m; ++i) {
    const int da = subset[static_cast<std::size_t>(i)];
    const int db = subset[static_cast<std::size_t>(i + 1)];
    const ScaleGevParams& a = theta_all[static_cast<std::size_t>(da)];
    const ScaleGevParams& b = theta_all[static_cast<std::size_t>(db)];
    // mu/sigma differences
    jac(i, 4 * db + 0) = 1.0 / b.sigma;
    jac(i, 4 * db + 1) = -b.mu / (b.sigma * b.sigma);
    jac(i, 4 * da + 0) = -1.0 / a.sigma;
    jac(i, 4 * da + 1) = a.mu / (a.sigma * a.sigma);
    // gamma differences
    jac(m + i, 4 * db + 2) = 1.0;
    jac(m + i, 4 * da + 2) = -1.0;
    // alpha/mu differences
    jac(2 * m + i, 4 * db + 0) = -b.alpha / (b.mu * b.mu);
    jac(2 * m + i, 4 * db + 3) = 1.0 / b.mu;
    jac(2 * m + i, 4 * da + 0) = a.alpha / (a.mu * a.mu);
    jac(2 * m + i, 4 * da + 3) = -1.0 / a.mu;
  }
  return jac;
}

double wald_statistic_ls(const std::vector<ScaleGevParams>& theta_all,
                         const Eigen::MatrixXd& sigma, const std::vector<int>& subset, int n) {
  const Eigen::VectorXd g = g_of_theta_ls(theta_all, subset);
  const Eigen::MatrixXd jac = jacobian_G_ls(theta_all, subset, static_cast<int>(theta_all.size()));
  return quadratic_form(g, jac, sigma, n);
}

}  // namespace gevpool
