#include "gevpool/covariance.hpp"

#include <stdexcept>

namespace gevpool {

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m, const std::string& label,
                            std::vector<std::string>* warnings) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed for " + label);
  }
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double max_ev = ev.maxCoeff();
  if (!(max_ev > 0.0)) {
    throw std::runtime_error(label + " is singular");
  }
  const double tol = 1e-12 * max_ev;
  Eigen::MatrixXd inv = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  bool dropped = false;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) > tol) {
      inv += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose() / ev(i);
    } else {
      dropped = true;
    }
  }
  if (dropped && warnings) {
    warnings->push_back(label + " is near singular; using a pseudo-inverse");
  }
  return inv;
}

SigmaEstimate estimate_sigma(const BlockMaximaPanel& panel,
                             const std::vector<ScaleGevFit>& fits,
                             const std::vector<Eigen::Matrix4d>& hessians) {
  const int d = panel.n_locations();
  const int n = panel.n_years();
  if (static_cast<int>(fits.size()) != d) {
    throw std::invalid_argument("estimate_sigma: one fit per panel location required");
  }
  if (!hessians.empty() && static_cast<int>(hessians.size()) != d) {
    throw std::invalid_argument("estimate_sigma: hessian count does not match locations");
  }

  SigmaEstimate out;

  // standardized scores per location, n x 3 each, and their means
  std::vector<Eigen::MatrixXd> scores(static_cast<std::size_t>(d));
  // P_d(t) = (jacobian of effective params) * T^{-1}, 4 x 3, per location and year
  std::vector<std::vector<Eigen::Matrix<double, 4, 3>>> proj(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const ScaleGevParams& theta = fits[static_cast<std::size_t>(j)].theta;
    Eigen::MatrixXd s(n, 3);
    std::vector<Eigen::Matrix<double, 4, 3>> p(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
      const double c = panel.covariate[static_cast<std::size_t>(t)];
      const GevParams eff = effective_params(theta, c);
      const double z = (panel.maxima(t, j) - eff.mu) / eff.sigma;
      Eigen::Vector3d sc;
      try {
        sc = std_gev_score(z, theta.gamma);
      } catch (const std::domain_error&) {
        throw std::runtime_error("estimate_sigma: observation outside fitted support at location " +
                                 panel.location_ids[static_cast<std::size_t>(j)]);
      }
      s.row(t) = sc.transpose();
      Eigen::Matrix<double, 4, 3> pj = effective_param_jacobian(theta, c);
      pj.col(0) /= eff.sigma;
      pj.col(1) /= eff.sigma;
      p[static_cast<std::size_t>(t)] = pj;
    }
    s.rowwise() -= s.colwise().mean();
    scores[static_cast<std::size_t>(j)] = s;
    proj[static_cast<std::size_t>(j)] = std::move(p);
  }

  std::vector<Eigen::Matrix4d> jinv(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const Eigen::Matrix4d& info = hessians.empty() ? fits[static_cast<std::size_t>(j)].info
                                                   : hessians[static_cast<std::size_t>(j)];
    jinv[static_cast<std::size_t>(j)] = spd_inverse(
        info, "information matrix for location " + panel.location_ids[static_cast<std::size_t>(j)],
        &out.warnings);
  }

  out.sigma.resize(4 * d, 4 * d);
  for (int j = 0; j < d; ++j) {
    for (int kk = j; kk < d; ++kk) {
      const Eigen::Matrix3d gamma_jk =
          scores[static_cast<std::size_t>(j)].transpose() * scores[static_cast<std::size_t>(kk)] /
          static_cast<double>(n);
      Eigen::Matrix4d c_jk = Eigen::Matrix4d::Zero();
      for (int t = 0; t < n; ++t) {
        c_jk += proj[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] * gamma_jk *
                proj[static_cast<std::size_t>(kk)][static_cast<std::size_t>(t)].transpose();
      }
      c_jk /= static_cast<double>(n);
      const Eigen::Matrix4d block =
          jinv[static_cast<std::size_t>(j)] * c_jk * jinv[static_cast<std::size_t>(kk)];
      out.sigma.block(4 * j, 4 * kk, 4, 4) = block;
      if (kk != j) out.sigma.block(4 * kk, 4 * j, 4, 4) = block.transpose();
    }
  }
  return out;
}

Eigen::MatrixXd pairwise_block(const Eigen::MatrixXd& sigma, const std::vector<int>& subset) {
  if (sigma.rows() != sigma.cols() || sigma.rows() % 4 != 0) {
    throw std::invalid_argument("pairwise_block: sigma must be square with 4x4 blocks");
  }
  const int d = static_cast<int>(sigma.rows()) / 4;
  const int k = static_cast<int>(subset.size());
  if (k == 0) throw std::invalid_argument("pairwise_block: subset must not be empty");
  for (int idx : subset) {
    if (idx < 0 || idx >= d) {
      throw std::invalid_argument("pairwise_block: subset index out of range");
    }
  }
  Eigen::MatrixXd out(4 * k, 4 * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      out.block(4 * a, 4 * b, 4, 4) =
          sigma.block(4 * subset[static_cast<std::size_t>(a)],
                      4 * subset[static_cast<std::size_t>(b)], 4, 4);
    }
  }
  return out;
}

}  // namespace gevpool
