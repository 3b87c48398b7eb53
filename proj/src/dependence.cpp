#include "gevpool/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>

#include "gevpool/covariance.hpp"
#include "gevpool/optim.hpp"
#include "gevpool/special.hpp"

namespace gevpool {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTinyDensity = 1e-300;

// numerical guards for the dependence parameters during optimization
constexpr double kMinLogisticR = 0.01;
constexpr double kMinHrLambda = 0.01;
constexpr double kMaxHrLambda = 8.0;
constexpr double kMinSmooth = 0.05;
constexpr double kMaxSmooth = 2.0;
constexpr double kMaxNugget = 0.95;
constexpr double kLogRangeDrift = 12.0;
constexpr double kPinTol = 1e-3;

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

double logsumexp2(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

void validate_max_stable_spec(const MaxStableSpec& spec) {
  switch (spec.family) {
    case MaxStableFamily::kSmith: {
      if (spec.params.size() != 3) {
        throw std::invalid_argument("smith spec needs {cov11, cov12, cov22}");
      }
      const double s11 = spec.params[0], s12 = spec.params[1], s22 = spec.params[2];
      if (!(s11 > 0.0) || !(s22 > 0.0) || !(s11 * s22 - s12 * s12 > 0.0)) {
        throw std::invalid_argument("smith spec: covariance must be positive definite");
      }
      break;
    }
    case MaxStableFamily::kSchlather: {
      if (spec.params.size() != 3) {
        throw std::invalid_argument("schlather spec needs {range, smooth, nugget}");
      }
      if (!(spec.params[0] > 0.0)) throw std::invalid_argument("schlather spec: range must be positive");
      if (!(spec.params[1] > 0.0 && spec.params[1] <= 2.0)) {
        throw std::invalid_argument("schlather spec: smooth must lie in (0,2]");
      }
      if (!(spec.params[2] >= 0.0 && spec.params[2] < 1.0)) {
        throw std::invalid_argument("schlather spec: nugget must lie in [0,1)");
      }
      break;
    }
    case MaxStableFamily::kBrownResnick: {
      if (spec.params.size() != 2) {
        throw std::invalid_argument("brown_resnick spec needs {range, smooth}");
      }
      if (!(spec.params[0] > 0.0)) throw std::invalid_argument("brown_resnick spec: range must be positive");
      if (!(spec.params[1] > 0.0 && spec.params[1] <= 2.0)) {
        throw std::invalid_argument("brown_resnick spec: smooth must lie in (0,2]");
      }
      break;
    }
  }
}

void validate_biv_spec(const BivariateSpec& spec) {
  switch (spec.family) {
    case BivariateFamily::kLogistic:
      if (spec.params.size() != 1) throw std::invalid_argument("logistic spec needs {r}");
      if (!(spec.params[0] > 0.0 && spec.params[0] <= 1.0)) {
        throw std::invalid_argument("logistic spec: r must lie in (0,1]");
      }
      break;
    case BivariateFamily::kAsymmetricLogistic:
      if (spec.params.size() != 2) throw std::invalid_argument("asym_logistic spec needs {r, psi}");
      if (!(spec.params[0] > 0.0 && spec.params[0] <= 1.0)) {
        throw std::invalid_argument("asym_logistic spec: r must lie in (0,1]");
      }
      if (!(spec.params[1] >= 0.0 && spec.params[1] <= 1.0)) {
        throw std::invalid_argument("asym_logistic spec: psi must lie in [0,1]");
      }
      break;
    case BivariateFamily::kHuslerReiss:
      if (spec.params.size() != 1) throw std::invalid_argument("husler_reiss spec needs {lambda}");
      if (!(spec.params[0] > 0.0)) {
        throw std::invalid_argument("husler_reiss spec: lambda must be positive");
      }
      break;
  }
}

void check_positive_pair(double z1, double z2) {
  if (!(z1 > 0.0) || !(z2 > 0.0)) {
    throw std::invalid_argument("dependence: coordinates must be positive");
  }
}

double semivariogram(double dist, double range, double smooth) {
  return std::pow(dist / range, smooth);
}

double schlather_rho(double dist, double range, double smooth, double nugget) {
  return (1.0 - nugget) * std::exp(-std::pow(dist / range, smooth));
}

// ---------------------------------------------------------------------------
// pair densities

double log_density_from_vfuncs(const VFuncs& f) {
  return -f.v + std::log(std::max(f.v1 * f.v2 - f.v12, kTinyDensity));
}

double logistic_log_density(double r, double z1, double z2) {
  const double lt1 = -std::log(z1) / r;
  const double lt2 = -std::log(z2) / r;
  const double ls = logsumexp2(lt1, lt2);
  const double v = std::exp(r * ls);
  return -v + (r - 2.0) * ls + lt1 + lt2 - std::log(z1) - std::log(z2) +
         std::log(std::exp(r * ls) + (1.0 - r) / r);
}

double alog_log_density(double r, double psi, double z1, double z2) {
  if (psi <= 1e-12) {
    // independence: product of unit Frechet densities
    return -1.0 / z1 - 1.0 / z2 - 2.0 * std::log(z1) - 2.0 * std::log(z2);
  }
  const double lt1 = (std::log(psi) - std::log(z1)) / r;
  const double lt2 = -std::log(z2) / r;
  const double ls = logsumexp2(lt1, lt2);
  const double v = (1.0 - psi) / z1 + std::exp(r * ls);
  const double a1 = std::exp((r - 1.0) * ls + lt1) / z1;  // -dV/dz1 minus the (1-psi) part
  const double a2 = std::exp((r - 1.0) * ls + lt2) / z2;
  const double cross = ((1.0 - r) / r) * std::exp((r - 2.0) * ls + lt1 + lt2) / (z1 * z2);
  const double bracket = ((1.0 - psi) / (z1 * z1) + a1) * a2 + cross;
  return -v + std::log(std::max(bracket, kTinyDensity));
}

}  // namespace

VFuncs hr_v_funcs(double z1, double z2, double a) {
  check_positive_pair(z1, z2);
  if (!(a > 0.0)) throw std::invalid_argument("hr_v_funcs: dependence scalar must be positive");
  VFuncs f;
  const double w1 = 0.5 * a + std::log(z2 / z1) / a;
  const double w2 = a - w1;
  const double p1 = norm_cdf(w1), p2 = norm_cdf(w2);
  const double d1 = norm_pdf(w1), d2 = norm_pdf(w2);
  f.v = p1 / z1 + p2 / z2;
  f.v1 = -p1 / (z1 * z1) - d1 / (a * z1 * z1) + d2 / (a * z1 * z2);
  f.v2 = -p2 / (z2 * z2) - d2 / (a * z2 * z2) + d1 / (a * z1 * z2);
  f.v12 = d1 * (w1 / a - 1.0) / (a * z1 * z1 * z2) + d2 * (w2 / a - 1.0) / (a * z1 * z2 * z2);
  return f;
}

VFuncs schlather_v_funcs(double z1, double z2, double rho) {
  check_positive_pair(z1, z2);
  if (!(rho > -1.0 && rho < 1.0)) {
    throw std::invalid_argument("schlather_v_funcs: rho must lie in (-1,1)");
  }
  VFuncs f;
  const double b = 2.0 * (1.0 + rho);
  const double s = z1 + z2;
  const double p = z1 * z2;
  const double d = std::sqrt(std::max(1.0 - b * p / (s * s), 1e-14));
  f.v = 0.5 * (s / p) * (1.0 + d);
  f.v1 = -(1.0 + d) / (2.0 * z1 * z1) - b * (z2 - z1) / (4.0 * d * z1 * s * s);
  f.v2 = -(1.0 + d) / (2.0 * z2 * z2) - b * (z1 - z2) / (4.0 * d * z2 * s * s);
  f.v12 = -b / (2.0 * d * s * s * s) +
          b * b * (z2 - z1) * (z2 - z1) / (8.0 * d * d * d * s * s * s * s * s);
  return f;
}

VFuncs biv_v_funcs(const BivariateSpec& spec, double z1, double z2) {
  validate_biv_spec(spec);
  check_positive_pair(z1, z2);
  VFuncs f;
  switch (spec.family) {
    case BivariateFamily::kLogistic: {
      const double r = spec.params[0];
      if (r >= 1.0 - 1e-12) {
        f.v = 1.0 / z1 + 1.0 / z2;
        f.v1 = -1.0 / (z1 * z1);
        f.v2 = -1.0 / (z2 * z2);
        f.v12 = 0.0;
        return f;
      }
      const double lt1 = -std::log(z1) / r;
      const double lt2 = -std::log(z2) / r;
      const double ls = logsumexp2(lt1, lt2);
      f.v = std::exp(r * ls);
      f.v1 = -std::exp((r - 1.0) * ls + lt1) / z1;
      f.v2 = -std::exp((r - 1.0) * ls + lt2) / z2;
      f.v12 = ((r - 1.0) / r) * std::exp((r - 2.0) * ls + lt1 + lt2) / (z1 * z2);
      return f;
    }
    case BivariateFamily::kAsymmetricLogistic: {
      const double r = spec.params[0];
      const double psi = spec.params[1];
      if (psi <= 1e-12) {
        f.v = 1.0 / z1 + 1.0 / z2;
        f.v1 = -1.0 / (z1 * z1);
        f.v2 = -1.0 / (z2 * z2);
        f.v12 = 0.0;
        return f;
      }
      const double lt1 = (std::log(psi) - std::log(z1)) / r;
      const double lt2 = -std::log(z2) / r;
      const double ls = logsumexp2(lt1, lt2);
      f.v = (1.0 - psi) / z1 + std::exp(r * ls);
      f.v1 = -(1.0 - psi) / (z1 * z1) - std::exp((r - 1.0) * ls + lt1) / z1;
      f.v2 = -std::exp((r - 1.0) * ls + lt2) / z2;
      f.v12 = ((r - 1.0) / r) * std::exp((r - 2.0) * ls + lt1 + lt2) / (z1 * z2);
      return f;
    }
    case BivariateFamily::kHuslerReiss:
      return hr_v_funcs(z1, z2, 2.0 * spec.params[0]);
  }
  throw std::logic_error("biv_v_funcs: unknown family");
}

double biv_log_density(const BivariateSpec& spec, double z1, double z2) {
  validate_biv_spec(spec);
  check_positive_pair(z1, z2);
  switch (spec.family) {
    case BivariateFamily::kLogistic: {
      const double r = spec.params[0];
      if (r >= 1.0 - 1e-12) {
        return -1.0 / z1 - 1.0 / z2 - 2.0 * std::log(z1) - 2.0 * std::log(z2);
      }
      return logistic_log_density(r, z1, z2);
    }
    case BivariateFamily::kAsymmetricLogistic:
      return alog_log_density(spec.params[0], spec.params[1], z1, z2);
    case BivariateFamily::kHuslerReiss:
      return log_density_from_vfuncs(hr_v_funcs(z1, z2, 2.0 * spec.params[0]));
  }
  throw std::logic_error("biv_log_density: unknown family");
}

double biv_conditional_cdf(const BivariateSpec& spec, double z1, double z2) {
  validate_biv_spec(spec);
  check_positive_pair(z1, z2);
  switch (spec.family) {
    case BivariateFamily::kLogistic: {
      const double r = spec.params[0];
      if (r >= 1.0 - 1e-12) return std::exp(-1.0 / z2);
      const double lt1 = -std::log(z1) / r;
      const double lt2 = -std::log(z2) / r;
      const double ls = logsumexp2(lt1, lt2);
      const double v = std::exp(r * ls);
      const double logc = -v + 1.0 / z1 + std::log(z1) + lt1 + (r - 1.0) * ls;
      return clamp(std::exp(logc), 0.0, 1.0);
    }
    case BivariateFamily::kAsymmetricLogistic: {
      const double r = spec.params[0];
      const double psi = spec.params[1];
      if (psi <= 1e-12) return std::exp(-1.0 / z2);
      const double lt1 = (std::log(psi) - std::log(z1)) / r;
      const double lt2 = -std::log(z2) / r;
      const double ls = logsumexp2(lt1, lt2);
      const double v = (1.0 - psi) / z1 + std::exp(r * ls);
      const double term = (1.0 - psi) + std::exp(std::log(z1) + lt1 + (r - 1.0) * ls);
      return clamp(std::exp(-v + 1.0 / z1) * term, 0.0, 1.0);
    }
    case BivariateFamily::kHuslerReiss: {
      const double a = 2.0 * spec.params[0];
      const double w1 = 0.5 * a + std::log(z2 / z1) / a;
      const double w2 = a - w1;
      const double v = norm_cdf(w1) / z1 + norm_cdf(w2) / z2;
      const double term = norm_cdf(w1) + norm_pdf(w1) / a - (z1 / z2) * norm_pdf(w2) / a;
      return clamp(std::exp(-v + 1.0 / z1) * std::max(term, 0.0), 0.0, 1.0);
    }
  }
  throw std::logic_error("biv_conditional_cdf: unknown family");
}

double max_stable_pair_log_density(const MaxStableSpec& spec, const Eigen::Vector2d& lag,
                                   double y1, double y2) {
  validate_max_stable_spec(spec);
  switch (spec.family) {
    case MaxStableFamily::kSmith: {
      const double s11 = spec.params[0], s12 = spec.params[1], s22 = spec.params[2];
      const double det = s11 * s22 - s12 * s12;
      const double q = (lag(0) * lag(0) * s22 - 2.0 * lag(0) * lag(1) * s12 +
                        lag(1) * lag(1) * s11) / det;
      return log_density_from_vfuncs(hr_v_funcs(y1, y2, std::sqrt(std::max(q, 1e-12))));
    }
    case MaxStableFamily::kSchlather: {
      const double rho = schlather_rho(lag.norm(), spec.params[0], spec.params[1], spec.params[2]);
      return log_density_from_vfuncs(schlather_v_funcs(y1, y2, rho));
    }
    case MaxStableFamily::kBrownResnick: {
      const double a = std::sqrt(2.0 * semivariogram(lag.norm(), spec.params[0], spec.params[1]));
      return log_density_from_vfuncs(hr_v_funcs(y1, y2, std::max(a, 1e-6)));
    }
  }
  throw std::logic_error("max_stable_pair_log_density: unknown family");
}

double empirical_extremal_coefficient(const std::vector<double>& y1,
                                      const std::vector<double>& y2) {
  if (y1.size() != y2.size() || y1.empty()) {
    throw std::invalid_argument("empirical_extremal_coefficient: need equal nonempty series");
  }
  double s = 0.0;
  for (std::size_t t = 0; t < y1.size(); ++t) {
    if (!(y1[t] > 0.0) || !(y2[t] > 0.0)) {
      throw std::invalid_argument("empirical_extremal_coefficient: values must be positive");
    }
    s += 1.0 / std::max(y1[t], y2[t]);
  }
  return static_cast<double>(y1.size()) / s;
}

// ---------------------------------------------------------------------------
// family strings and candidates

std::string to_string(MaxStableFamily family) {
  switch (family) {
    case MaxStableFamily::kSmith: return "smith";
    case MaxStableFamily::kSchlather: return "schlather";
    case MaxStableFamily::kBrownResnick: return "brown_resnick";
  }
  return "unknown";
}

std::string to_string(BivariateFamily family) {
  switch (family) {
    case BivariateFamily::kLogistic: return "logistic";
    case BivariateFamily::kAsymmetricLogistic: return "asym_logistic";
    case BivariateFamily::kHuslerReiss: return "husler_reiss";
  }
  return "unknown";
}

MaxStableFamily max_stable_family_from_string(const std::string& name) {
  if (name == "smith") return MaxStableFamily::kSmith;
  if (name == "schlather") return MaxStableFamily::kSchlather;
  if (name == "brown_resnick") return MaxStableFamily::kBrownResnick;
  throw std::invalid_argument("unknown max-stable family: " + name);
}

BivariateFamily biv_family_from_string(const std::string& name) {
  if (name == "logistic") return BivariateFamily::kLogistic;
  if (name == "asym_logistic") return BivariateFamily::kAsymmetricLogistic;
  if (name == "husler_reiss") return BivariateFamily::kHuslerReiss;
  throw std::invalid_argument("unknown bivariate family: " + name);
}

std::vector<MaxStableFamily> default_max_stable_candidates() {
  return {MaxStableFamily::kSmith, MaxStableFamily::kSchlather, MaxStableFamily::kBrownResnick};
}

std::vector<BivariateFamily> default_biv_candidates() {
  return {BivariateFamily::kLogistic, BivariateFamily::kAsymmetricLogistic,
          BivariateFamily::kHuslerReiss};
}

// ---------------------------------------------------------------------------
// extremal coefficients

double extremal_coefficient(const MaxStableSpec& spec, const Eigen::Vector2d& lag) {
  validate_max_stable_spec(spec);
  switch (spec.family) {
    case MaxStableFamily::kSmith: {
      const double s11 = spec.params[0], s12 = spec.params[1], s22 = spec.params[2];
      const double det = s11 * s22 - s12 * s12;
      const double q = (lag(0) * lag(0) * s22 - 2.0 * lag(0) * lag(1) * s12 +
                        lag(1) * lag(1) * s11) / det;
      return 2.0 * norm_cdf(0.5 * std::sqrt(std::max(q, 0.0)));
    }
    case MaxStableFamily::kSchlather: {
      if (lag.norm() == 0.0 && spec.params[2] == 0.0) return 1.0;
      const double rho = schlather_rho(lag.norm(), spec.params[0], spec.params[1], spec.params[2]);
      return 1.0 + std::sqrt(0.5 * (1.0 - rho));
    }
    case MaxStableFamily::kBrownResnick: {
      const double g = semivariogram(lag.norm(), spec.params[0], spec.params[1]);
      return 2.0 * norm_cdf(std::sqrt(0.5 * g));
    }
  }
  throw std::logic_error("extremal_coefficient: unknown family");
}

double extremal_coefficient(const BivariateSpec& spec) {
  validate_biv_spec(spec);
  switch (spec.family) {
    case BivariateFamily::kLogistic:
      return std::pow(2.0, spec.params[0]);
    case BivariateFamily::kAsymmetricLogistic: {
      const double r = spec.params[0];
      const double psi = spec.params[1];
      if (psi <= 0.0) return 2.0;
      return 1.0 - psi + std::pow(std::pow(psi, 1.0 / r) + 1.0, r);
    }
    case BivariateFamily::kHuslerReiss:
      return 2.0 * norm_cdf(spec.params[0]);
  }
  throw std::logic_error("extremal_coefficient: unknown family");
}

// ---------------------------------------------------------------------------
// composite likelihood fitting

namespace {

struct PairSet {
  std::vector<std::pair<int, int>> idx;
  std::vector<Eigen::Vector2d> lag;
  std::vector<double> dist;
};

PairSet make_pairs(const Eigen::MatrixXd& coords) {
  PairSet ps;
  const int d = static_cast<int>(coords.rows());
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ps.idx.emplace_back(j, k);
      Eigen::Vector2d lag = coords.row(j) - coords.row(k);
      ps.lag.push_back(lag);
      ps.dist.push_back(lag.norm());
    }
  }
  return ps;
}

void check_frechet_panel(const Eigen::MatrixXd& panel, const Eigen::MatrixXd& coords) {
  if (coords.cols() != 2) throw std::invalid_argument("fit_max_stable: coords must be D x 2");
  if (panel.cols() != coords.rows()) {
    throw std::invalid_argument("fit_max_stable: panel columns must match coordinate rows");
  }
  if (panel.cols() < 2) throw std::invalid_argument("fit_max_stable: need at least two sites");
  if (panel.rows() < 2) throw std::invalid_argument("fit_max_stable: need at least two years");
  if (!(panel.minCoeff() > 0.0)) {
    throw std::invalid_argument("fit_max_stable: panel must be on the unit Frechet scale");
  }
}

// per-pair dependence scalar: a for the HR form, rho for schlather
struct PairParams {
  bool schlather_form = false;
  std::vector<double> value;
};

// returns false when the optimization point violates a barrier
using PairParamFn = std::function<bool(const Eigen::VectorXd&, const PairSet&, PairParams*)>;

bool smith_pair_params(const Eigen::VectorXd& p, const PairSet& ps, PairParams* out) {
  if (std::abs(p(0)) > 12.0 || std::abs(p(2)) > 12.0 || std::abs(p(1)) > 1e5) return false;
  const double l11 = std::exp(p(0));
  const double l21 = p(1);
  const double l22 = std::exp(p(2));
  const double s11 = l11 * l11;
  const double s12 = l21 * l11;
  const double s22 = l21 * l21 + l22 * l22;
  const double det = s11 * s22 - s12 * s12;
  if (!(det > 0.0)) return false;
  out->schlather_form = false;
  out->value.resize(ps.idx.size());
  for (std::size_t i = 0; i < ps.idx.size(); ++i) {
    const Eigen::Vector2d& h = ps.lag[i];
    const double q = (h(0) * h(0) * s22 - 2.0 * h(0) * h(1) * s12 + h(1) * h(1) * s11) / det;
    if (!(q > 0.0)) return false;
    out->value[i] = std::sqrt(q);
  }
  return true;
}

double pairwise_loglik_year(const Eigen::MatrixXd& panel, const PairSet& ps,
                            const PairParams& pp, int t) {
  double ll = 0.0;
  for (std::size_t i = 0; i < ps.idx.size(); ++i) {
    const double y1 = panel(t, ps.idx[i].first);
    const double y2 = panel(t, ps.idx[i].second);
    const VFuncs f = pp.schlather_form ? schlather_v_funcs(y1, y2, pp.value[i])
                                       : hr_v_funcs(y1, y2, pp.value[i]);
    ll += log_density_from_vfuncs(f);
  }
  return ll;
}

double pairwise_loglik(const Eigen::MatrixXd& panel, const PairSet& ps, const PairParams& pp) {
  double ll = 0.0;
  for (int t = 0; t < panel.rows(); ++t) ll += pairwise_loglik_year(panel, ps, pp, t);
  return ll;
}

double median_of(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty vector");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<double> pair_theta_estimates(const Eigen::MatrixXd& panel, const PairSet& ps) {
  std::vector<double> thetas(ps.idx.size());
  const int n = static_cast<int>(panel.rows());
  for (std::size_t i = 0; i < ps.idx.size(); ++i) {
    double s = 0.0;
    for (int t = 0; t < n; ++t) {
      s += 1.0 / std::max(panel(t, ps.idx[i].first), panel(t, ps.idx[i].second));
    }
    thetas[i] = clamp(n / s, 1.02, 1.98);
  }
  return thetas;
}

struct MaxStableProblem {
  PairParamFn pair_params;
  Eigen::VectorXd start;
  Eigen::VectorXd step;
  // bounds checked for pinning; entries with lo == -inf or hi == inf are skipped
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  std::vector<bool> warn_lo;
  std::vector<bool> warn_hi;
  std::function<std::vector<double>(const Eigen::VectorXd&)> to_natural;
};

MaxStableProblem make_problem(MaxStableFamily family, const Eigen::MatrixXd& panel,
                              const PairSet& ps) {
  MaxStableProblem prob;
  const std::vector<double> thetas = pair_theta_estimates(panel, ps);
  switch (family) {
    case MaxStableFamily::kSmith: {
      std::vector<double> tau2;
      for (std::size_t i = 0; i < ps.idx.size(); ++i) {
        const double a = 2.0 * norm_quantile(thetas[i] / 2.0);
        if (a > 1e-6) tau2.push_back(ps.dist[i] * ps.dist[i] / (a * a));
      }
      const double tau = std::sqrt(tau2.empty() ? 1.0 : median_of(tau2));
      prob.pair_params = smith_pair_params;
      prob.start = Eigen::VectorXd(3);
      prob.start << std::log(tau), 0.0, std::log(tau);
      prob.step = Eigen::VectorXd::Constant(3, 0.3);
      prob.lo = Eigen::VectorXd(3);
      prob.lo << -12.0, -1e5, -12.0;
      prob.hi = Eigen::VectorXd(3);
      prob.hi << 12.0, 1e5, 12.0;
      prob.warn_lo = {true, true, true};
      prob.warn_hi = {true, true, true};
      prob.to_natural = [](const Eigen::VectorXd& p) {
        const double l11 = std::exp(p(0));
        const double l21 = p(1);
        const double l22 = std::exp(p(2));
        return std::vector<double>{l11 * l11, l21 * l11, l21 * l21 + l22 * l22};
      };
      break;
    }
    case MaxStableFamily::kSchlather: {
      const double r0 = std::max(median_of(ps.dist), 1e-6);
      prob.start = Eigen::VectorXd(3);
      prob.start << std::log(r0), 1.0, 0.05;
      prob.step = Eigen::VectorXd(3);
      prob.step << 0.4, 0.2, 0.05;
      prob.lo = Eigen::VectorXd(3);
      prob.lo << std::log(r0) - kLogRangeDrift, kMinSmooth, 0.0;
      prob.hi = Eigen::VectorXd(3);
      prob.hi << std::log(r0) + kLogRangeDrift, kMaxSmooth, kMaxNugget;
      prob.warn_lo = {true, true, false};  // nugget 0 is a regular value
      prob.warn_hi = {true, false, true};  // smooth 2 is a regular value
      prob.pair_params = [](const Eigen::VectorXd& p, const PairSet& pset, PairParams* out) {
        out->schlather_form = true;
        out->value.resize(pset.idx.size());
        for (std::size_t i = 0; i < pset.idx.size(); ++i) {
          out->value[i] = schlather_rho(pset.dist[i], std::exp(p(0)), p(1), p(2));
          if (!(out->value[i] > -1.0 && out->value[i] < 1.0)) return false;
        }
        return true;
      };
      prob.to_natural = [](const Eigen::VectorXd& p) {
        return std::vector<double>{std::exp(p(0)), p(1), p(2)};
      };
      break;
    }
    case MaxStableFamily::kBrownResnick: {
      std::vector<double> ranges;
      for (std::size_t i = 0; i < ps.idx.size(); ++i) {
        const double a = 2.0 * norm_quantile(thetas[i] / 2.0);
        const double g = 0.5 * a * a;
        if (g > 1e-8) ranges.push_back(ps.dist[i] / g);
      }
      const double r0 = std::max(ranges.empty() ? median_of(ps.dist) : median_of(ranges), 1e-6);
      prob.start = Eigen::VectorXd(2);
      prob.start << std::log(r0), 1.0;
      prob.step = Eigen::VectorXd(2);
      prob.step << 0.4, 0.2;
      prob.lo = Eigen::VectorXd(2);
      prob.lo << std::log(r0) - kLogRangeDrift, kMinSmooth;
      prob.hi = Eigen::VectorXd(2);
      prob.hi << std::log(r0) + kLogRangeDrift, kMaxSmooth;
      prob.warn_lo = {true, true};
      prob.warn_hi = {true, false};
      prob.pair_params = [](const Eigen::VectorXd& p, const PairSet& pset, PairParams* out) {
        out->schlather_form = false;
        out->value.resize(pset.idx.size());
        for (std::size_t i = 0; i < pset.idx.size(); ++i) {
          const double g = semivariogram(pset.dist[i], std::exp(p(0)), p(1));
          const double a = std::sqrt(2.0 * g);
          if (!(a > 1e-8) || !std::isfinite(a)) return false;
          out->value[i] = a;
        }
        return true;
      };
      prob.to_natural = [](const Eigen::VectorXd& p) {
        return std::vector<double>{std::exp(p(0)), p(1)};
      };
      break;
    }
  }
  return prob;
}

// trace penalty of the composite likelihood information criterion
double clic_penalty(const Eigen::MatrixXd& panel, const PairSet& ps,
                    const MaxStableProblem& prob, const Eigen::VectorXd& p) {
  const int n = static_cast<int>(panel.rows());
  const int dim = static_cast<int>(p.size());

  // barrier bounds are not applied here: finite difference points may step
  // slightly outside the optimization box, where the formulas remain valid
  auto mean_ll = [&](const Eigen::VectorXd& q) -> double {
    PairParams pp;
    if (!prob.pair_params(q, ps, &pp)) return -kInf;
    const double ll = pairwise_loglik(panel, ps, pp) / n;
    return std::isfinite(ll) ? ll : -kInf;
  };

  // FD Hessian of the mean pairwise log likelihood
  Eigen::MatrixXd hess(dim, dim);
  Eigen::VectorXd hstep(dim);
  for (int i = 0; i < dim; ++i) hstep(i) = 1e-3 * std::max(std::abs(p(i)), 1.0);
  const double f0 = mean_ll(p);
  if (!std::isfinite(f0)) return kInf;
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd qp = p, qm = p;
    qp(i) += hstep(i);
    qm(i) -= hstep(i);
    const double fp = mean_ll(qp), fm = mean_ll(qm);
    if (!std::isfinite(fp) || !std::isfinite(fm)) return kInf;
    hess(i, i) = (fp - 2.0 * f0 + fm) / (hstep(i) * hstep(i));
    for (int j = i + 1; j < dim; ++j) {
      Eigen::VectorXd qpp = p, qpm = p, qmp = p, qmm = p;
      qpp(i) += hstep(i); qpp(j) += hstep(j);
      qpm(i) += hstep(i); qpm(j) -= hstep(j);
      qmp(i) -= hstep(i); qmp(j) += hstep(j);
      qmm(i) -= hstep(i); qmm(j) -= hstep(j);
      const double a = mean_ll(qpp), b = mean_ll(qpm), c = mean_ll(qmp), e = mean_ll(qmm);
      if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(e)) {
        return kInf;
      }
      hess(i, j) = (a - b - c + e) / (4.0 * hstep(i) * hstep(j));
      hess(j, i) = hess(i, j);
    }
  }

  // per-year FD scores
  Eigen::MatrixXd scores(n, dim);
  for (int i = 0; i < dim; ++i) {
    const double h = 1e-5 * std::max(std::abs(p(i)), 1.0);
    Eigen::VectorXd qp = p, qm = p;
    qp(i) += h;
    qm(i) -= h;
    PairParams ppp, ppm;
    if (!prob.pair_params(qp, ps, &ppp) || !prob.pair_params(qm, ps, &ppm)) return kInf;
    for (int t = 0; t < n; ++t) {
      const double lp = pairwise_loglik_year(panel, ps, ppp, t);
      const double lm = pairwise_loglik_year(panel, ps, ppm, t);
      scores(t, i) = (lp - lm) / (2.0 * h);
    }
  }
  scores.rowwise() -= scores.colwise().mean();
  const Eigen::MatrixXd kmat = scores.transpose() * scores / static_cast<double>(n);

  try {
    const Eigen::MatrixXd jinv = spd_inverse(-hess, "composite information", nullptr);
    return (jinv * kmat).trace();
  } catch (const std::exception&) {
    return kInf;
  }
}

}  // namespace

MaxStableFit fit_max_stable(const Eigen::MatrixXd& frechet_panel, const Eigen::MatrixXd& coords,
                            MaxStableFamily family) {
  check_frechet_panel(frechet_panel, coords);
  const PairSet ps = make_pairs(coords);
  for (double dist : ps.dist) {
    if (!(dist > 0.0)) throw std::invalid_argument("fit_max_stable: coincident coordinates");
  }
  MaxStableProblem prob = make_problem(family, frechet_panel, ps);
  const int dim = static_cast<int>(prob.start.size());

  auto objective = [&](const Eigen::VectorXd& p) -> double {
    for (int i = 0; i < dim; ++i) {
      if (p(i) < prob.lo(i) || p(i) > prob.hi(i)) return kInf;
    }
    PairParams pp;
    if (!prob.pair_params(p, ps, &pp)) return kInf;
    const double ll = pairwise_loglik(frechet_panel, ps, pp);
    return std::isfinite(ll) ? -ll : kInf;
  };

  SimplexResult nm = nelder_mead(objective, prob.start, prob.step, 250 * dim, 1e-10);

  MaxStableFit fit;
  fit.spec.family = family;
  fit.spec.params = prob.to_natural(nm.x);
  fit.pairwise_nll = nm.fval;
  fit.converged = nm.converged && std::isfinite(nm.fval);
  for (int i = 0; i < dim; ++i) {
    const bool at_lo = nm.x(i) - prob.lo(i) < kPinTol && prob.warn_lo[static_cast<std::size_t>(i)];
    const bool at_hi = prob.hi(i) - nm.x(i) < kPinTol && prob.warn_hi[static_cast<std::size_t>(i)];
    if (at_lo || at_hi) {
      fit.converged = false;
      fit.warnings.push_back(to_string(family) + " fit: parameter " + std::to_string(i) +
                             " stopped at a bound");
    }
  }

  if (std::isfinite(nm.fval)) {
    const double penalty = clic_penalty(frechet_panel, ps, prob, nm.x);
    if (std::isfinite(penalty)) {
      fit.clic = 2.0 * (nm.fval + penalty);  // -2 (loglik - trace)
    } else {
      fit.clic = kInf;
      fit.warnings.push_back(to_string(family) + " fit: information criterion unavailable");
      fit.converged = false;
    }
  } else {
    fit.clic = kInf;
  }
  return fit;
}

MaxStableFit select_max_stable(const Eigen::MatrixXd& frechet_panel, const Eigen::MatrixXd& coords,
                               const std::vector<MaxStableFamily>& candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("select_max_stable: no candidate families");
  }
  bool have = false;
  MaxStableFit best;
  for (const MaxStableFamily family : candidates) {
    MaxStableFit fit = fit_max_stable(frechet_panel, coords, family);
    if (!have) {
      best = fit;
      have = true;
      continue;
    }
    if (fit.converged != best.converged) {
      if (fit.converged) best = fit;
      continue;
    }
    if (std::abs(fit.clic - best.clic) < 1e-9) {
      if (fit.spec.params.size() < best.spec.params.size()) best = fit;
    } else if (fit.clic < best.clic) {
      best = fit;
    }
  }
  return best;
}

BivariateFit fit_biv_ev(const Eigen::MatrixXd& pair, BivariateFamily family) {
  if (pair.cols() != 2) throw std::invalid_argument("fit_biv_ev: sample must have two columns");
  if (pair.rows() < 2) throw std::invalid_argument("fit_biv_ev: need at least two rows");
  if (!(pair.minCoeff() > 0.0)) {
    throw std::invalid_argument("fit_biv_ev: sample must be on the unit Frechet scale");
  }
  const int n = static_cast<int>(pair.rows());
  std::vector<double> y1(static_cast<std::size_t>(n)), y2(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    y1[static_cast<std::size_t>(t)] = pair(t, 0);
    y2[static_cast<std::size_t>(t)] = pair(t, 1);
  }
  const double theta_hat = clamp(empirical_extremal_coefficient(y1, y2), 1.02, 1.98);

  auto nll_of = [&](const BivariateSpec& spec) -> double {
    double s = 0.0;
    for (int t = 0; t < n; ++t) s -= biv_log_density(spec, pair(t, 0), pair(t, 1));
    return std::isfinite(s) ? s : kInf;
  };

  BivariateFit fit;
  fit.spec.family = family;
  switch (family) {
    case BivariateFamily::kLogistic: {
      auto obj = [&](const Eigen::VectorXd& p) -> double {
        if (p(0) < kMinLogisticR || p(0) > 1.0) return kInf;
        return nll_of(BivariateSpec{family, {p(0)}});
      };
      Eigen::VectorXd p0(1);
      p0 << clamp(std::log2(theta_hat), 0.05, 0.98);
      Eigen::VectorXd step(1);
      step << 0.1;
      SimplexResult nm = nelder_mead(obj, p0, step, 200, 1e-12);
      fit.spec.params = {clamp(nm.x(0), kMinLogisticR, 1.0)};
      fit.nll = nm.fval;
      fit.converged = nm.converged && std::isfinite(nm.fval);
      if (nm.x(0) - kMinLogisticR < kPinTol) {
        fit.converged = false;
        fit.warnings.push_back("logistic fit: r stopped at the lower bound");
      }
      fit.aic = 2.0 + 2.0 * fit.nll;
      break;
    }
    case BivariateFamily::kAsymmetricLogistic: {
      auto obj = [&](const Eigen::VectorXd& p) -> double {
        if (p(0) < kMinLogisticR || p(0) > 1.0 || p(1) < 0.0 || p(1) > 1.0) return kInf;
        return nll_of(BivariateSpec{family, {p(0), p(1)}});
      };
      Eigen::VectorXd step(2);
      step << 0.1, 0.1;
      SimplexResult best_nm;
      best_nm.fval = kInf;
      const double r0 = clamp(std::log2(theta_hat), 0.05, 0.98);
      for (const auto& start : {std::pair<double, double>{r0, 0.85},
                                std::pair<double, double>{0.55, 0.5}}) {
        Eigen::VectorXd p0(2);
        p0 << start.first, start.second;
        SimplexResult nm = nelder_mead(obj, p0, step, 400, 1e-12);
        if (nm.fval < best_nm.fval) best_nm = nm;
      }
      fit.spec.params = {clamp(best_nm.x(0), kMinLogisticR, 1.0), clamp(best_nm.x(1), 0.0, 1.0)};
      fit.nll = best_nm.fval;
      fit.converged = best_nm.converged && std::isfinite(best_nm.fval);
      if (best_nm.x(0) - kMinLogisticR < kPinTol) {
        fit.converged = false;
        fit.warnings.push_back("asym_logistic fit: r stopped at the lower bound");
      }
      fit.aic = 4.0 + 2.0 * fit.nll;
      break;
    }
    case BivariateFamily::kHuslerReiss: {
      auto obj = [&](const Eigen::VectorXd& p) -> double {
        if (p(0) < kMinHrLambda || p(0) > kMaxHrLambda) return kInf;
        return nll_of(BivariateSpec{family, {p(0)}});
      };
      Eigen::VectorXd p0(1);
      p0 << clamp(norm_quantile(theta_hat / 2.0), 0.05, 3.0);
      Eigen::VectorXd step(1);
      step << 0.2;
      SimplexResult nm = nelder_mead(obj, p0, step, 200, 1e-12);
      fit.spec.params = {clamp(nm.x(0), kMinHrLambda, kMaxHrLambda)};
      fit.nll = nm.fval;
      fit.converged = nm.converged && std::isfinite(nm.fval);
      if (nm.x(0) - kMinHrLambda < kPinTol || kMaxHrLambda - nm.x(0) < kPinTol) {
        fit.converged = false;
        fit.warnings.push_back("husler_reiss fit: lambda stopped at a bound");
      }
      fit.aic = 2.0 + 2.0 * fit.nll;
      break;
    }
  }
  return fit;
}

BivariateFit select_biv_ev(const Eigen::MatrixXd& pair,
                           const std::vector<BivariateFamily>& candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("select_biv_ev: no candidate families");
  }
  bool have = false;
  BivariateFit best;
  for (const BivariateFamily family : candidates) {
    BivariateFit fit = fit_biv_ev(pair, family);
    if (!have) {
      best = fit;
      have = true;
      continue;
    }
    if (fit.converged != best.converged) {
      if (fit.converged) best = fit;
      continue;
    }
    if (std::abs(fit.aic - best.aic) < 1e-9) {
      if (fit.spec.params.size() < best.spec.params.size()) best = fit;
    } else if (fit.aic < best.aic) {
      best = fit;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// simulation

namespace {

Eigen::MatrixXd chol_with_jitter(Eigen::MatrixXd m, const std::string& what) {
  for (double jitter : {1e-12, 1e-9, 1e-6}) {
    Eigen::MatrixXd j = m + jitter * Eigen::MatrixXd::Identity(m.rows(), m.cols());
    Eigen::LLT<Eigen::MatrixXd> llt(j);
    if (llt.info() == Eigen::Success) return llt.matrixL();
  }
  throw std::runtime_error("cholesky factorization failed for " + what);
}

// provides one normalized proposal Y with Y(k) = 1 for the extremal function at site k
class ProposalSampler {
 public:
  virtual ~ProposalSampler() = default;
  virtual void propose(int k, Rng& rng, Eigen::VectorXd* y) const = 0;
};

class SmithSampler : public ProposalSampler {
 public:
  SmithSampler(const Eigen::MatrixXd& coords, double s11, double s12, double s22)
      : coords_(coords) {
    const double det = s11 * s22 - s12 * s12;
    inv11_ = s22 / det;
    inv12_ = -s12 / det;
    inv22_ = s11 / det;
    l11_ = std::sqrt(s11);
    l21_ = s12 / l11_;
    l22_ = std::sqrt(s22 - l21_ * l21_);
  }

  void propose(int k, Rng& rng, Eigen::VectorXd* y) const override {
    const double n1 = rng.normal();
    const double n2 = rng.normal();
    const double ux = coords_(k, 0) + l11_ * n1;
    const double uy = coords_(k, 1) + l21_ * n1 + l22_ * n2;
    const int d = static_cast<int>(coords_.rows());
    const double qk = quad(coords_(k, 0) - ux, coords_(k, 1) - uy);
    for (int j = 0; j < d; ++j) {
      const double qj = quad(coords_(j, 0) - ux, coords_(j, 1) - uy);
      (*y)(j) = std::exp(-0.5 * (qj - qk));
    }
  }

 private:
  double quad(double hx, double hy) const {
    return hx * hx * inv11_ + 2.0 * hx * hy * inv12_ + hy * hy * inv22_;
  }

  Eigen::MatrixXd coords_;
  double inv11_, inv12_, inv22_;
  double l11_, l21_, l22_;
};

class BrownResnickSampler : public ProposalSampler {
 public:
  BrownResnickSampler(const Eigen::MatrixXd& coords, double range, double smooth) {
    const int d = static_cast<int>(coords.rows());
    d_ = d;
    Eigen::MatrixXd gamma_m(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const double dist = (coords.row(i) - coords.row(j)).norm();
        gamma_m(i, j) = dist > 0.0 ? semivariogram(dist, range, smooth) : 0.0;
      }
    }
    gamma_ = gamma_m;
    chols_.reserve(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      Eigen::MatrixXd c(d - 1, d - 1);
      for (int i = 0, ii = 0; i < d; ++i) {
        if (i == k) continue;
        for (int j = 0, jj = 0; j < d; ++j) {
          if (j == k) continue;
          c(ii, jj) = gamma_m(i, k) + gamma_m(j, k) - gamma_m(i, j);
          ++jj;
        }
        ++ii;
      }
      chols_.push_back(d > 1 ? chol_with_jitter(c, "brown_resnick proposal covariance")
                             : Eigen::MatrixXd());
    }
  }

  void propose(int k, Rng& rng, Eigen::VectorXd* y) const override {
    Eigen::VectorXd normals(d_ - 1);
    for (int i = 0; i < d_ - 1; ++i) normals(i) = rng.normal();
    Eigen::VectorXd g = d_ > 1 ? Eigen::VectorXd(chols_[static_cast<std::size_t>(k)] * normals)
                               : Eigen::VectorXd();
    for (int j = 0, jj = 0; j < d_; ++j) {
      if (j == k) {
        (*y)(j) = 1.0;
        continue;
      }
      (*y)(j) = std::exp(g(jj) - gamma_(j, k));
      ++jj;
    }
  }

 private:
  int d_ = 0;
  Eigen::MatrixXd gamma_;
  std::vector<Eigen::MatrixXd> chols_;
};

class SchlatherSampler : public ProposalSampler {
 public:
  SchlatherSampler(const Eigen::MatrixXd& coords, double range, double smooth, double nugget) {
    const int d = static_cast<int>(coords.rows());
    d_ = d;
    Eigen::MatrixXd corr(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const double dist = (coords.row(i) - coords.row(j)).norm();
        corr(i, j) = dist > 0.0 ? schlather_rho(dist, range, smooth, nugget) : 1.0;
      }
    }
    for (int k = 0; k < d; ++k) {
      Eigen::VectorXd r(d - 1);
      Eigen::MatrixXd s(d - 1, d - 1);
      for (int i = 0, ii = 0; i < d; ++i) {
        if (i == k) continue;
        r(ii) = corr(i, k);
        for (int j = 0, jj = 0; j < d; ++j) {
          if (j == k) continue;
          s(ii, jj) = corr(i, j);
          ++jj;
        }
        ++ii;
      }
      s -= r * r.transpose();
      means_.push_back(r);
      chols_.push_back(d > 1 ? chol_with_jitter(s, "schlather proposal covariance")
                             : Eigen::MatrixXd());
    }
  }

  void propose(int k, Rng& rng, Eigen::VectorXd* y) const override {
    const double wk = std::sqrt(2.0 * rng.exponential());
    Eigen::VectorXd normals(d_ - 1);
    for (int i = 0; i < d_ - 1; ++i) normals(i) = rng.normal();
    Eigen::VectorXd w(d_ - 1);
    if (d_ > 1) {
      w = means_[static_cast<std::size_t>(k)] * wk +
          chols_[static_cast<std::size_t>(k)] * normals;
    }
    for (int j = 0, jj = 0; j < d_; ++j) {
      if (j == k) {
        (*y)(j) = 1.0;
        continue;
      }
      (*y)(j) = std::max(0.0, w(jj)) / wk;
      ++jj;
    }
  }

 private:
  int d_ = 0;
  std::vector<Eigen::VectorXd> means_;
  std::vector<Eigen::MatrixXd> chols_;
};

}  // namespace

Eigen::MatrixXd simulate_max_stable(const MaxStableSpec& spec, const Eigen::MatrixXd& coords,
                                    int n, Rng& rng) {
  validate_max_stable_spec(spec);
  if (coords.cols() != 2) throw std::invalid_argument("simulate_max_stable: coords must be D x 2");
  if (coords.rows() < 1) throw std::invalid_argument("simulate_max_stable: need at least one site");
  if (n < 1) throw std::invalid_argument("simulate_max_stable: need n >= 1");

  const int d = static_cast<int>(coords.rows());
  std::unique_ptr<ProposalSampler> sampler;
  switch (spec.family) {
    case MaxStableFamily::kSmith:
      sampler = std::make_unique<SmithSampler>(coords, spec.params[0], spec.params[1],
                                               spec.params[2]);
      break;
    case MaxStableFamily::kSchlather:
      sampler = std::make_unique<SchlatherSampler>(coords, spec.params[0], spec.params[1],
                                                   spec.params[2]);
      break;
    case MaxStableFamily::kBrownResnick:
      sampler = std::make_unique<BrownResnickSampler>(coords, spec.params[0], spec.params[1]);
      break;
  }

  Eigen::MatrixXd out(n, d);
  Eigen::VectorXd z(d);
  Eigen::VectorXd y(d);
  for (int i = 0; i < n; ++i) {
    z.setZero();
    for (int k = 0; k < d; ++k) {
      double esum = rng.exponential();
      double zeta = 1.0 / esum;
      long guard = 0;
      while (zeta > z(k)) {
        if (++guard > 1000000) {
          throw std::runtime_error("simulate_max_stable: proposal loop failed to terminate");
        }
        sampler->propose(k, rng, &y);
        bool accept = true;
        for (int j = 0; j < k; ++j) {
          if (zeta * y(j) >= z(j)) {
            accept = false;
            break;
          }
        }
        if (accept) {
          for (int j = 0; j < d; ++j) z(j) = std::max(z(j), zeta * y(j));
        }
        esum += rng.exponential();
        zeta = 1.0 / esum;
      }
    }
    out.row(i) = z.transpose();
  }
  return out;
}

Eigen::MatrixXd simulate_biv_ev(const BivariateSpec& spec, int n, Rng& rng) {
  validate_biv_spec(spec);
  if (n < 1) throw std::invalid_argument("simulate_biv_ev: need n >= 1");
  Eigen::MatrixXd out(n, 2);
  for (int i = 0; i < n; ++i) {
    const double z1 = rng.frechet();
    const double u = rng.uniform();
    double lo = 1e-12, hi = 1e12;
    while (biv_conditional_cdf(spec, z1, lo) > u && lo > 1e-290) lo *= 1e-4;
    while (biv_conditional_cdf(spec, z1, hi) < u && hi < 1e290) hi *= 1e4;
    for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-11; ++it) {
      const double mid = std::sqrt(lo * hi);
      if (biv_conditional_cdf(spec, z1, mid) < u) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out(i, 0) = z1;
    out(i, 1) = std::sqrt(lo * hi);
  }
  return out;
}

}  // namespace gevpool
