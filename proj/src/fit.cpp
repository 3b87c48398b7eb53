#include "gevpool/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gevpool/optim.hpp"

namespace gevpool {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMinObservations = 20;
constexpr double kGammaFloor = -0.5;
constexpr double kBarrierScale = 1e-4;  // applied to the total nll
constexpr double kEulerMascheroni = 0.57721566490153286;

void check_series(const std::vector<double>& series, const std::vector<double>& covariate) {
  if (series.size() != covariate.size()) {
    throw std::invalid_argument("fit_scale_gev: series and covariate length differ");
  }
  if (static_cast<int>(series.size()) < kMinObservations) {
    throw std::invalid_argument("fit_scale_gev: need at least " +
                                std::to_string(kMinObservations) + " observations");
  }
  double lo = kInf, hi = -kInf;
  for (double x : series) {
    if (!std::isfinite(x)) throw std::invalid_argument("fit_scale_gev: non-finite observation");
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  for (double c : covariate) {
    if (!std::isfinite(c)) throw std::invalid_argument("fit_scale_gev: non-finite covariate");
  }
  if (lo == hi) {
    throw std::invalid_argument("fit_scale_gev: series is degenerate, all values are equal");
  }
}

double series_sd(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (n - 1.0));
}

double total_nll(const std::vector<double>& series, const std::vector<double>& covariate,
                 const ScaleGevParams& theta) {
  double s = 0.0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    s -= scale_gev_log_density(series[t], covariate[t], theta);
  }
  return s;
}

ScaleGevParams unpack(const Eigen::VectorXd& p) {
  return ScaleGevParams{std::exp(p(0)), std::exp(p(1)), p(2), p(3)};
}

Eigen::VectorXd pack(const ScaleGevParams& theta) {
  Eigen::VectorXd p(4);
  p << std::log(theta.mu), std::log(theta.sigma), theta.gamma, theta.alpha;
  return p;
}

struct SingleObjective {
  const std::vector<double>& series;
  const std::vector<double>& covariate;
  double inv_n;

  double operator()(const Eigen::VectorXd& p) const {
    if (!(p(2) > kGammaFloor + 1e-8)) return kInf;
    if (std::abs(p(0)) > 500.0 || std::abs(p(1)) > 500.0) return kInf;
    const ScaleGevParams theta = unpack(p);
    const double nll = total_nll(series, covariate, theta) * inv_n;
    if (!std::isfinite(nll)) return kInf;
    return nll + kBarrierScale * inv_n / (p(2) - kGammaFloor);
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& p) const {
    const ScaleGevParams theta = unpack(p);
    Eigen::VectorXd g(4);
    try {
      const Eigen::Vector4d gm = mean_nll_gradient(series, covariate, theta);
      g << theta.mu * gm(0), theta.sigma * gm(1), gm(2), gm(3);
    } catch (const std::domain_error&) {
      g.setConstant(std::numeric_limits<double>::quiet_NaN());
      return g;
    }
    g(2) -= kBarrierScale * inv_n / ((p(2) - kGammaFloor) * (p(2) - kGammaFloor));
    return g;
  }
};

ScaleGevParams default_start(const std::vector<double>& series) {
  GevParams g = pwm_initial_gev(series);
  ScaleGevParams theta;
  theta.sigma = g.sigma;
  theta.gamma = g.gamma;
  theta.alpha = 0.0;
  theta.mu = std::max(g.mu, std::max(0.05 * g.sigma, 1e-8));
  return theta;
}

ScaleGevFit fit_core(const std::vector<double>& series, const std::vector<double>& covariate,
                     const FitOptions& options) {
  const double n = static_cast<double>(series.size());
  const SingleObjective obj{series, covariate, 1.0 / n};

  ScaleGevParams start = options.has_start ? options.start : default_start(series);
  if (!(start.gamma > kGammaFloor + 1e-6)) start.gamma = kGammaFloor + 1e-6 + 0.05;
  Eigen::VectorXd p0 = pack(start);

  double cmax = 0.0;
  for (double c : covariate) cmax = std::max(cmax, std::abs(c));
  const double alpha_step = cmax > 1e-12 ? 0.05 * start.mu / cmax : 0.1;

  Eigen::VectorXd step(4);
  if (options.has_start) {
    step << 0.02, 0.02, 0.01, 0.2 * alpha_step;
  } else {
    step << 0.1, 0.1, 0.05, alpha_step;
  }

  auto fn = [&obj](const Eigen::VectorXd& p) { return obj(p); };
  SimplexResult nm = nelder_mead(fn, p0, step, options.nm_max_evals, 1e-10);

  auto gfn = [&obj](const Eigen::VectorXd& p) { return obj.gradient(p); };
  QuasiNewtonResult qn = bfgs(fn, gfn, nm.x, 150, 1e-7);

  Eigen::VectorXd best = nm.x;
  double best_f = nm.fval;
  bool converged = nm.converged;
  if (std::isfinite(qn.fval) && qn.fval <= best_f) {
    best = qn.x;
    best_f = qn.fval;
    converged = converged || qn.converged;
  }

  ScaleGevFit fit;
  fit.theta = unpack(best);
  fit.n = static_cast<int>(series.size());
  fit.nll = total_nll(series, covariate, fit.theta);
  fit.converged = converged && std::isfinite(fit.nll);
  if (options.compute_info) {
    fit.info = numeric_info(series, covariate, fit.theta);
  }
  return fit;
}

}  // namespace

GevParams pwm_initial_gev(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 3) throw std::invalid_argument("pwm_initial_gev: need at least 3 observations");
  std::vector<double> x(series);
  std::sort(x.begin(), x.end());
  const double dn = static_cast<double>(n);
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dj = static_cast<double>(j);  // j = rank - 1
    b0 += x[j];
    b1 += dj / (dn - 1.0) * x[j];
    b2 += dj * (dj - 1.0) / ((dn - 1.0) * (dn - 2.0)) * x[j];
  }
  b0 /= dn;
  b1 /= dn;
  b2 /= dn;

  GevParams out;
  const double d21 = 2.0 * b1 - b0;
  const double d32 = 3.0 * b2 - b0;
  bool ok = d21 > 0.0 && d32 > 0.0;
  if (ok) {
    const double c = d21 / d32 - std::log(2.0) / std::log(3.0);
    double k = 7.8590 * c + 2.9554 * c * c;
    k = std::min(std::max(k, -0.9), 0.45);  // gamma = -k restricted to [-0.45, 0.9]
    if (std::abs(k) < 1e-8) {
      out.gamma = 0.0;
      out.sigma = d21 / std::log(2.0);
      out.mu = b0 - kEulerMascheroni * out.sigma;
    } else {
      const double g1 = std::tgamma(1.0 + k);
      out.gamma = -k;
      out.sigma = d21 * k / (g1 * (1.0 - std::pow(2.0, -k)));
      out.mu = b0 + out.sigma * (g1 - 1.0) / k;
    }
    ok = std::isfinite(out.mu) && std::isfinite(out.sigma) && out.sigma > 0.0;
  }
  if (!ok) {
    const double sd = series_sd(series);
    out.sigma = sd * std::sqrt(6.0) / 3.14159265358979324;
    out.mu = b0 - kEulerMascheroni * out.sigma;
    out.gamma = 0.0;
  }
  return out;
}

ScaleGevFit fit_scale_gev(const std::vector<double>& series,
                          const std::vector<double>& covariate,
                          const FitOptions& options) {
  check_series(series, covariate);
  return fit_core(series, covariate, options);
}

ScaleGevFit fit_pooled_scale_gev(const BlockMaximaPanel& panel,
                                 const std::vector<int>& subset,
                                 const FitOptions& options) {
  validate_subset(panel, subset);
  std::vector<double> series;
  std::vector<double> covariate;
  series.reserve(subset.size() * panel.years.size());
  covariate.reserve(subset.size() * panel.years.size());
  for (int d : subset) {
    for (int t = 0; t < panel.n_years(); ++t) {
      series.push_back(panel.maxima(t, d));
      covariate.push_back(panel.covariate[static_cast<std::size_t>(t)]);
    }
  }
  check_series(series, covariate);
  return fit_core(series, covariate, options);
}

LsNullFit fit_ls_null_scale_gev(const BlockMaximaPanel& panel,
                                const std::vector<int>& subset,
                                const std::vector<ScaleGevFit>* location_fits) {
  validate_subset(panel, subset);
  if (location_fits && location_fits->size() != subset.size()) {
    throw std::invalid_argument("fit_ls_null_scale_gev: one location fit per subset member");
  }
  const int k = static_cast<int>(subset.size());
  const int n = panel.n_years();
  const double inv_total = 1.0 / (static_cast<double>(k) * n);

  std::vector<std::vector<double>> cols(static_cast<std::size_t>(k));
  for (int m = 0; m < k; ++m) cols[static_cast<std::size_t>(m)] = panel.column(subset[static_cast<std::size_t>(m)]);

  std::vector<ScaleGevParams> starts(static_cast<std::size_t>(k));
  for (int m = 0; m < k; ++m) {
    if (location_fits) {
      starts[static_cast<std::size_t>(m)] = (*location_fits)[static_cast<std::size_t>(m)].theta;
    } else {
      FitOptions opt;
      opt.compute_info = false;
      starts[static_cast<std::size_t>(m)] =
          fit_scale_gev(cols[static_cast<std::size_t>(m)], panel.covariate, opt).theta;
    }
  }

  double delta0 = 0.0, eta0 = 0.0, gamma0 = 0.0;
  for (const auto& s : starts) {
    delta0 += s.mu / s.sigma;
    eta0 += s.alpha / s.mu;
    gamma0 += s.gamma;
  }
  delta0 /= k;
  eta0 /= k;
  gamma0 = std::max(gamma0 / k, kGammaFloor + 0.02);

  // q = (log mu_1 .. log mu_k, log delta, eta, gamma)
  const int dim = k + 3;
  Eigen::VectorXd q0(dim);
  for (int m = 0; m < k; ++m) q0(m) = std::log(starts[static_cast<std::size_t>(m)].mu);
  q0(k) = std::log(delta0);
  q0(k + 1) = eta0;
  q0(k + 2) = gamma0;

  auto thetas_of = [&](const Eigen::VectorXd& q) {
    std::vector<ScaleGevParams> thetas(static_cast<std::size_t>(k));
    const double delta = std::exp(q(k));
    for (int m = 0; m < k; ++m) {
      const double mu = std::exp(q(m));
      thetas[static_cast<std::size_t>(m)] =
          ScaleGevParams{mu, mu / delta, q(k + 2), q(k + 1) * mu};
    }
    return thetas;
  };

  auto fn = [&](const Eigen::VectorXd& q) -> double {
    if (!(q(k + 2) > kGammaFloor + 1e-8)) return kInf;
    for (int i = 0; i <= k; ++i) {
      if (std::abs(q(i)) > 500.0) return kInf;
    }
    const auto thetas = thetas_of(q);
    double s = 0.0;
    for (int m = 0; m < k; ++m) {
      s += total_nll(cols[static_cast<std::size_t>(m)], panel.covariate,
                     thetas[static_cast<std::size_t>(m)]);
    }
    if (!std::isfinite(s)) return kInf;
    return s * inv_total + kBarrierScale * inv_total / (q(k + 2) - kGammaFloor);
  };

  auto gfn = [&](const Eigen::VectorXd& q) -> Eigen::VectorXd {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
    const auto thetas = thetas_of(q);
    const double delta = std::exp(q(k));
    const double eta = q(k + 1);
    try {
      for (int m = 0; m < k; ++m) {
        const auto& th = thetas[static_cast<std::size_t>(m)];
        const auto& col = cols[static_cast<std::size_t>(m)];
        for (int t = 0; t < n; ++t) {
          const Eigen::Vector4d sc =
              -scale_gev_score(col[static_cast<std::size_t>(t)],
                               panel.covariate[static_cast<std::size_t>(t)], th);
          g(m) += th.mu * (sc(0) + sc(1) / delta + sc(3) * eta);
          g(k) += sc(1) * (-th.mu / delta);  // already times delta from log param
          g(k + 1) += sc(3) * th.mu;
          g(k + 2) += sc(2);
        }
      }
    } catch (const std::domain_error&) {
      g.setConstant(std::numeric_limits<double>::quiet_NaN());
      return g;
    }
    g *= inv_total;
    g(k + 2) -= kBarrierScale * inv_total /
                ((q(k + 2) - kGammaFloor) * (q(k + 2) - kGammaFloor));
    return g;
  };

  QuasiNewtonResult qn = bfgs(fn, gfn, q0, 250, 1e-7);
  Eigen::VectorXd best = qn.x;
  double best_f = qn.fval;
  bool converged = qn.converged;
  if (!converged) {
    Eigen::VectorXd step = Eigen::VectorXd::Constant(dim, 0.02);
    step(k + 2) = 0.01;
    SimplexResult nm = nelder_mead(fn, best_f < kInf ? best : q0, step, 200 * dim, 1e-11);
    if (nm.fval <= best_f) {
      QuasiNewtonResult qn2 = bfgs(fn, gfn, nm.x, 250, 1e-7);
      if (std::isfinite(qn2.fval) && qn2.fval <= nm.fval) {
        best = qn2.x;
        best_f = qn2.fval;
        converged = qn2.converged || nm.converged;
      } else {
        best = nm.x;
        best_f = nm.fval;
        converged = nm.converged;
      }
    }
  }

  LsNullFit out;
  out.thetas = thetas_of(best);
  out.converged = converged && std::isfinite(best_f);
  double nll = 0.0;
  for (int m = 0; m < k; ++m) {
    nll += total_nll(cols[static_cast<std::size_t>(m)], panel.covariate,
                     out.thetas[static_cast<std::size_t>(m)]);
  }
  out.nll = nll;
  return out;
}

Eigen::Vector4d mean_nll_gradient(const std::vector<double>& series,
                                  const std::vector<double>& covariate,
                                  const ScaleGevParams& theta) {
  Eigen::Vector4d g = Eigen::Vector4d::Zero();
  for (std::size_t t = 0; t < series.size(); ++t) {
    g -= scale_gev_score(series[t], covariate[t], theta);
  }
  return g / static_cast<double>(series.size());
}

Eigen::Matrix4d analytic_info(const std::vector<double>& series,
                              const std::vector<double>& covariate,
                              const ScaleGevParams& theta) {
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  for (std::size_t t = 0; t < series.size(); ++t) {
    h -= scale_gev_hessian(series[t], covariate[t], theta);
  }
  return h / static_cast<double>(series.size());
}

Eigen::Matrix4d numeric_info(const std::vector<double>& series,
                             const std::vector<double>& covariate,
                             const ScaleGevParams& theta) {
  Eigen::Matrix4d j;
  const double base[4] = {theta.mu, theta.sigma, theta.gamma, theta.alpha};
  bool ok = true;
  for (int col = 0; col < 4 && ok; ++col) {
    double h = 6e-6 * std::max(std::abs(base[col]), 1.0);
    bool done = false;
    for (int attempt = 0; attempt < 5 && !done; ++attempt) {
      ScaleGevParams tp = theta;
      ScaleGevParams tm = theta;
      double* fields_p[4] = {&tp.mu, &tp.sigma, &tp.gamma, &tp.alpha};
      double* fields_m[4] = {&tm.mu, &tm.sigma, &tm.gamma, &tm.alpha};
      *fields_p[col] += h;
      *fields_m[col] -= h;
      try {
        const Eigen::Vector4d gp = mean_nll_gradient(series, covariate, tp);
        const Eigen::Vector4d gm = mean_nll_gradient(series, covariate, tm);
        const Eigen::Vector4d dcol = (gp - gm) / (2.0 * h);
        if (dcol.allFinite()) {
          j.col(col) = dcol;
          done = true;
        }
      } catch (const std::exception&) {
        // perturbed parameters left the support; retry with a smaller step
      }
      if (!done) h *= 0.2;
    }
    if (!done) ok = false;
  }
  if (!ok) return analytic_info(series, covariate, theta);
  return 0.5 * (j + j.transpose());
}

}  // namespace gevpool
