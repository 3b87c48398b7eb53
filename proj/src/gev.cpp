#include "gevpool/gev.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gevpool {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// relative size of gamma*z below which the series forms of the
// gamma-derivative helpers are used to avoid cancellation
constexpr double kSeriesCut = 1e-2;

void check_scale(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gev: sigma must be positive");
}

// Q = L/gamma^2 - z/(gamma t) with L = log(1+gamma z), t = 1+gamma z.
// Appears in d/dgamma of (1+gamma z)^{-1/gamma}.
double q_term(double z, double gamma, double t, double L) {
  const double a = gamma * z;
  if (std::abs(a) < kSeriesCut) {
    double sum = 0.0;
    double apow = 1.0;
    double sign = 1.0;
    for (int j = 0; j <= 14; ++j) {
      sum += sign * apow * (j + 1.0) / (j + 2.0);
      apow *= a;
      sign = -sign;
    }
    return z * z * sum;
  }
  return L / (gamma * gamma) - z / (gamma * t);
}

// R = (gamma^2 z^2 + 2 gamma z t - 2 t^2 L)/(gamma^3 t^2); equals dQ/dgamma - Q_z z/t terms
// collected so that h_gg = 2Q + (gamma+1-u) R - u Q^2.
double r_term(double z, double gamma, double t, double L) {
  const double a = gamma * z;
  if (std::abs(a) < kSeriesCut) {
    double sum = 0.0;
    double apow = 1.0;
    double sign = -1.0;
    for (int j = 0; j <= 14; ++j) {
      sum += sign * apow * 4.0 / ((j + 3.0) * (j + 2.0) * (j + 1.0));
      apow *= a;
      sign = -sign;
    }
    return z * z * z * sum / (t * t);
  }
  const double num = a * a + 2.0 * a * t - 2.0 * t * t * L;
  return num / (gamma * gamma * gamma * t * t);
}

}  // namespace

double gev_cdf(double x, const GevParams& p) {
  check_scale(p.sigma);
  const double z = (x - p.mu) / p.sigma;
  if (std::abs(p.gamma) < kGumbelEps) {
    return std::exp(-std::exp(-z));
  }
  const double t = 1.0 + p.gamma * z;
  if (t <= 0.0) return p.gamma > 0.0 ? 0.0 : 1.0;
  return std::exp(-std::exp(-std::log1p(p.gamma * z) / p.gamma));
}

double gev_quantile(double q, const GevParams& p) {
  check_scale(p.sigma);
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("gev_quantile: q must lie strictly inside (0,1)");
  }
  const double lm = std::log(-std::log(q));
  if (std::abs(p.gamma) < kGumbelEps) {
    return p.mu - p.sigma * lm;
  }
  return p.mu + p.sigma * std::expm1(-p.gamma * lm) / p.gamma;
}

double gev_log_density(double x, const GevParams& p) {
  check_scale(p.sigma);
  const double z = (x - p.mu) / p.sigma;
  if (std::abs(p.gamma) < kGumbelEps) {
    return -std::log(p.sigma) - z - std::exp(-z);
  }
  const double t = 1.0 + p.gamma * z;
  if (t <= 0.0) return -kInf;
  const double logu = -std::log1p(p.gamma * z) / p.gamma;
  return -std::log(p.sigma) - std::exp(logu) + (p.gamma + 1.0) * logu;
}

GevParams effective_params(const ScaleGevParams& theta, double c) {
  if (!(theta.mu > 0.0)) throw std::invalid_argument("scale gev: mu must be positive");
  if (!(theta.sigma > 0.0)) throw std::invalid_argument("scale gev: sigma must be positive");
  const double e = std::exp(theta.alpha * c / theta.mu);
  return GevParams{theta.mu * e, theta.sigma * e, theta.gamma};
}

double scale_gev_log_density(double x, double c, const ScaleGevParams& theta) {
  return gev_log_density(x, effective_params(theta, c));
}

Eigen::Vector3d std_gev_score(double z, double gamma) {
  Eigen::Vector3d s;
  if (std::abs(gamma) < kGumbelEps) {
    const double e = std::exp(-z);
    s(0) = 1.0 - e;
    s(1) = z * (1.0 - e) - 1.0;
    s(2) = 0.5 * z * z * (1.0 - e) - z;
    return s;
  }
  const double t = 1.0 + gamma * z;
  if (t <= 0.0) throw std::domain_error("std_gev_score: point outside support");
  const double L = std::log1p(gamma * z);
  const double u = std::exp(-L / gamma);
  const double k1 = gamma + 1.0 - u;
  const double Q = q_term(z, gamma, t, L);
  s(0) = k1 / t;
  s(1) = z * k1 / t - 1.0;
  s(2) = k1 * Q - L / gamma;
  return s;
}

Eigen::Matrix3d std_gev_hessian(double z, double gamma) {
  Eigen::Matrix3d h;
  if (std::abs(gamma) < kGumbelEps) {
    const double e = std::exp(-z);
    const double z2 = z * z;
    const double z3 = z2 * z;
    const double hmm = -e;
    const double hms = (1.0 - z) * e - 1.0;
    const double hmg = 1.0 - z + z * e - 0.5 * z2 * e;
    const double hss = 1.0 - 2.0 * z + e * (2.0 * z - z2);
    const double hsg = z * hmg;
    const double hgg = z2 - (2.0 / 3.0) * z3 + e * ((2.0 / 3.0) * z3 - 0.25 * z2 * z2);
    h << hmm, hms, hmg, hms, hss, hsg, hmg, hsg, hgg;
    return h;
  }
  const double t = 1.0 + gamma * z;
  if (t <= 0.0) throw std::domain_error("std_gev_hessian: point outside support");
  const double L = std::log1p(gamma * z);
  const double u = std::exp(-L / gamma);
  const double k1 = gamma + 1.0 - u;
  const double Q = q_term(z, gamma, t, L);
  const double R = r_term(z, gamma, t, L);
  const double t2 = t * t;
  const double gp1 = gamma + 1.0;
  const double hmm = gp1 * (gamma - u) / t2;
  const double hms = z * gp1 * (gamma - u) / t2 - k1 / t;
  const double hss = z * z * gp1 * (gamma - u) / t2 - 2.0 * z * k1 / t + 1.0;
  const double hmg = -z * k1 / t2 + 1.0 / t - u * Q / t;
  const double hsg = z * hmg;
  const double hgg = 2.0 * Q + k1 * R - u * Q * Q;
  h << hmm, hms, hmg, hms, hss, hsg, hmg, hsg, hgg;
  return h;
}

Eigen::Matrix<double, 4, 3> effective_param_jacobian(const ScaleGevParams& theta, double c) {
  const double mu = theta.mu;
  const double sigma = theta.sigma;
  const double v = theta.alpha * c / mu;
  const double e = std::exp(v);
  Eigen::Matrix<double, 4, 3> b = Eigen::Matrix<double, 4, 3>::Zero();
  b(0, 0) = (1.0 - v) * e;
  b(0, 1) = -(sigma / mu) * v * e;
  b(1, 1) = e;
  b(2, 2) = 1.0;
  b(3, 0) = c * e;
  b(3, 1) = (sigma * c / mu) * e;
  return b;
}

Eigen::Vector4d scale_gev_score(double x, double c, const ScaleGevParams& theta) {
  const GevParams eff = effective_params(theta, c);
  const double z = (x - eff.mu) / eff.sigma;
  const Eigen::Vector3d s = std_gev_score(z, theta.gamma);
  Eigen::Vector3d psi;
  psi << s(0) / eff.sigma, s(1) / eff.sigma, s(2);
  return effective_param_jacobian(theta, c) * psi;
}

Eigen::Matrix4d scale_gev_hessian(double x, double c, const ScaleGevParams& theta) {
  const GevParams eff = effective_params(theta, c);
  const double z = (x - eff.mu) / eff.sigma;
  const double mu = theta.mu;
  const double sigma = theta.sigma;
  const double v = theta.alpha * c / mu;
  const double e = std::exp(v);

  const Eigen::Vector3d s = std_gev_score(z, theta.gamma);
  const Eigen::Matrix3d hs = std_gev_hessian(z, theta.gamma);
  const double psi1 = s(0) / eff.sigma;
  const double psi2 = s(1) / eff.sigma;

  Eigen::Matrix3d tinv = Eigen::Matrix3d::Identity();
  tinv(0, 0) = 1.0 / eff.sigma;
  tinv(1, 1) = 1.0 / eff.sigma;
  const Eigen::Matrix<double, 4, 3> b = effective_param_jacobian(theta, c);
  Eigen::Matrix4d h = b * tinv * hs * tinv * b.transpose();

  // curvature of the reparameterization itself
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r(0, 0) = psi1 * e * v * v / mu + psi2 * sigma * v * e * (2.0 + v) / (mu * mu);
  r(0, 1) = psi2 * (-v * e / mu);
  r(0, 3) = psi1 * (-e * v * c / mu) + psi2 * (-sigma * c * e * (1.0 + v) / (mu * mu));
  r(1, 3) = psi2 * e * c / mu;
  r(3, 3) = psi1 * c * c * e / mu + psi2 * sigma * c * c * e / (mu * mu);
  r(1, 0) = r(0, 1);
  r(3, 0) = r(0, 3);
  r(3, 1) = r(1, 3);
  return h + r;
}

std::vector<double> to_frechet(const std::vector<double>& m,
                               const std::vector<double>& covariate,
                               const ScaleGevParams& theta) {
  if (m.size() != covariate.size()) {
    throw std::invalid_argument("to_frechet: series and covariate length differ");
  }
  std::vector<double> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const GevParams eff = effective_params(theta, covariate[i]);
    const double z = (m[i] - eff.mu) / eff.sigma;
    if (std::abs(theta.gamma) < kGumbelEps) {
      out[i] = std::exp(z);
    } else {
      const double t = std::max(1.0 + theta.gamma * z, kFrechetFloor);
      out[i] = std::exp(std::log(t) / theta.gamma);
    }
  }
  return out;
}

std::vector<double> from_frechet(const std::vector<double>& y,
                                 const std::vector<double>& covariate,
                                 const ScaleGevParams& theta) {
  if (y.size() != covariate.size()) {
    throw std::invalid_argument("from_frechet: series and covariate length differ");
  }
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) throw std::invalid_argument("from_frechet: values must be positive");
    const GevParams eff = effective_params(theta, covariate[i]);
    double z;
    if (std::abs(theta.gamma) < kGumbelEps) {
      z = std::log(y[i]);
    } else {
      z = std::expm1(theta.gamma * std::log(y[i])) / theta.gamma;
    }
    out[i] = eff.mu + eff.sigma * z;
  }
  return out;
}

}  // namespace gevpool
