#include "gevpool/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace gevpool {

SimplexResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                          const Eigen::VectorXd& step, int max_evals,
                          double ftol_rel) {
  const int n = static_cast<int>(x0.size());
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<Eigen::VectorXd> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    double v = f(x);
    return std::isnan(v) ? inf : v;
  };

  fs[0] = eval(xs[0]);
  for (int i = 0; i < n; ++i) {
    xs[i + 1](i) += step(i);
    fs[i + 1] = eval(xs[i + 1]);
  }

  auto order = [&]() {
    std::vector<int> idx(n + 1);
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    std::vector<Eigen::VectorXd> xs2(n + 1);
    std::vector<double> fs2(n + 1);
    for (int i = 0; i <= n; ++i) {
      xs2[i] = xs[idx[i]];
      fs2[i] = fs[idx[i]];
    }
    xs.swap(xs2);
    fs.swap(fs2);
  };

  SimplexResult res;
  while (true) {
    order();
    if (std::isfinite(fs[0]) && std::isfinite(fs[n]) &&
        fs[n] - fs[0] <= ftol_rel * (std::fabs(fs[0]) + ftol_rel)) {
      res.converged = true;
      break;
    }
    if (evals >= max_evals) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += xs[i];
    centroid /= n;

    Eigen::VectorXd xr = centroid + (centroid - xs[n]);
    double fr = eval(xr);
    if (fr < fs[0]) {
      Eigen::VectorXd xe = centroid + 2.0 * (centroid - xs[n]);
      double fe = eval(xe);
      if (fe < fr) {
        xs[n] = xe;
        fs[n] = fe;
      } else {
        xs[n] = xr;
        fs[n] = fr;
      }
    } else if (fr < fs[n - 1]) {
      xs[n] = xr;
      fs[n] = fr;
    } else {
      bool outside = fr < fs[n];
      Eigen::VectorXd xc;
      if (outside) {
        xc = centroid + 0.5 * (xr - centroid);
      } else {
        xc = centroid - 0.5 * (centroid - xs[n]);
      }
      double fc = eval(xc);
      if (fc < std::min(fr, fs[n])) {
        xs[n] = xc;
        fs[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
          fs[i] = eval(xs[i]);
        }
      }
    }
  }

  order();
  res.x = xs[0];
  res.fval = fs[0];
  res.evals = evals;
  return res;
}

QuasiNewtonResult bfgs(const ObjectiveFn& f, const GradientFn& g,
                       const Eigen::VectorXd& x0, int max_iters, double gtol) {
  const int n = static_cast<int>(x0.size());
  const double inf = std::numeric_limits<double>::infinity();

  QuasiNewtonResult res;
  Eigen::VectorXd x = x0;
  double fx = f(x);
  if (!std::isfinite(fx)) {
    res.x = x0;
    res.fval = fx;
    res.grad = Eigen::VectorXd::Constant(n, inf);
    return res;
  }
  Eigen::VectorXd gx = g(x);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);

  for (int it = 0; it < max_iters; ++it) {
    if (!gx.allFinite()) break;
    if (gx.lpNorm<Eigen::Infinity>() <= gtol) {
      res.converged = true;
      break;
    }
    res.iters = it + 1;

    Eigen::VectorXd p = -(H * gx);
    double slope = gx.dot(p);
    if (!(slope < 0.0)) {  // reset on loss of descent direction
      H.setIdentity();
      p = -gx;
      slope = gx.dot(p);
    }

    double t = 1.0;
    double fnew = inf;
    Eigen::VectorXd xnew;
    bool ok = false;
    for (int ls = 0; ls < 40; ++ls) {
      xnew = x + t * p;
      fnew = f(xnew);
      if (std::isfinite(fnew) && fnew <= fx + 1e-4 * t * slope) {
        ok = true;
        break;
      }
      t *= 0.5;
    }
    if (!ok) break;

    Eigen::VectorXd gnew = g(xnew);
    if (!gnew.allFinite()) {
      x = xnew;
      fx = fnew;
      gx = gnew;
      break;
    }
    Eigen::VectorXd s = xnew - x;
    Eigen::VectorXd y = gnew - gx;
    double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      double rho = 1.0 / sy;
      H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) +
          rho * s * s.transpose();
    }
    x = xnew;
    fx = fnew;
    gx = gnew;
  }

  if (gx.allFinite() && gx.lpNorm<Eigen::Infinity>() <= gtol) res.converged = true;
  res.x = x;
  res.fval = fx;
  res.grad = gx;
  return res;
}

}  // namespace gevpool
