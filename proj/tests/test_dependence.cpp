#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gevpool/dependence.hpp"
#include "gevpool/special.hpp"
#include "support.hpp"

using namespace gevpool;

namespace {

Eigen::MatrixXd line_coords(int d, double spacing) {
  Eigen::MatrixXd c(d, 2);
  for (int j = 0; j < d; ++j) {
    c(j, 0) = spacing * j;
    c(j, 1) = 0.0;
  }
  return c;
}

void check_vfuncs_consistency(const std::function<VFuncs(double, double)>& vf, double z1,
                              double z2) {
  const VFuncs f = vf(z1, z2);
  const double h1 = 1e-5 * z1;
  const double h2 = 1e-5 * z2;
  const double fd1 = (vf(z1 + h1, z2).v - vf(z1 - h1, z2).v) / (2 * h1);
  const double fd2 = (vf(z1, z2 + h2).v - vf(z1, z2 - h2).v) / (2 * h2);
  const double fd12 = (vf(z1 + h1, z2 + h2).v - vf(z1 + h1, z2 - h2).v - vf(z1 - h1, z2 + h2).v +
                       vf(z1 - h1, z2 - h2).v) /
                      (4 * h1 * h2);
  CHECK(f.v1 == doctest::Approx(fd1).epsilon(1e-5));
  CHECK(f.v2 == doctest::Approx(fd2).epsilon(1e-5));
  CHECK(f.v12 == doctest::Approx(fd12).epsilon(1e-4));
}

}  // namespace

TEST_CASE("family names round trip") {
  for (MaxStableFamily f :
       {MaxStableFamily::kSmith, MaxStableFamily::kSchlather, MaxStableFamily::kBrownResnick}) {
    CHECK(max_stable_family_from_string(to_string(f)) == f);
  }
  for (BivariateFamily f : {BivariateFamily::kLogistic, BivariateFamily::kAsymmetricLogistic,
                            BivariateFamily::kHuslerReiss}) {
    CHECK(biv_family_from_string(to_string(f)) == f);
  }
  CHECK_THROWS_AS(max_stable_family_from_string("gauss"), std::invalid_argument);
  CHECK_THROWS_AS(biv_family_from_string(""), std::invalid_argument);
  CHECK(default_max_stable_candidates().size() == 3);
  CHECK(default_biv_candidates().size() == 3);
}

TEST_CASE("husler reiss exponent function") {
  // closed form: V = Phi(a/2 + log(z2/z1)/a)/z1 + Phi(a/2 + log(z1/z2)/a)/z2
  const double a = 1.3;
  const double z1 = 0.8, z2 = 2.4;
  const VFuncs f = hr_v_funcs(z1, z2, a);
  const double w = 0.5 * a + std::log(z2 / z1) / a;
  CHECK(f.v == doctest::Approx(norm_cdf(w) / z1 + norm_cdf(a - w) / z2).epsilon(1e-14));

  // derivative consistency at several points
  for (auto [x, y] : {std::pair{1.0, 1.0}, {0.5, 3.0}, {2.0, 0.3}, {5.0, 4.0}}) {
    check_vfuncs_consistency([&](double u, double v) { return hr_v_funcs(u, v, a); }, x, y);
  }

  // homogeneity of order -1: V(tz1, tz2) = V(z1, z2) / t
  const VFuncs g = hr_v_funcs(3.0 * z1, 3.0 * z2, a);
  CHECK(g.v == doctest::Approx(f.v / 3.0).epsilon(1e-12));

  // weak dependence limit: V approaches 1/z1 + 1/z2
  const VFuncs indep = hr_v_funcs(z1, z2, 40.0);
  CHECK(indep.v == doctest::Approx(1.0 / z1 + 1.0 / z2).epsilon(1e-10));
  // strong dependence limit: V approaches max(1/z1, 1/z2)
  const VFuncs dep = hr_v_funcs(z1, z2, 1e-4);
  CHECK(dep.v == doctest::Approx(std::max(1.0 / z1, 1.0 / z2)).epsilon(1e-6));

  CHECK_THROWS_AS(hr_v_funcs(-1.0, 1.0, a), std::invalid_argument);
  CHECK_THROWS_AS(hr_v_funcs(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("schlather exponent function") {
  for (double rho : {-0.5, 0.0, 0.7, 0.95}) {
    CAPTURE(rho);
    // diagonal: V(z,z) = theta / z with theta = 1 + sqrt((1-rho)/2)
    const double theta = 1.0 + std::sqrt(0.5 * (1.0 - rho));
    const VFuncs f = schlather_v_funcs(2.0, 2.0, rho);
    CHECK(f.v == doctest::Approx(theta / 2.0).epsilon(1e-12));
    for (auto [x, y] : {std::pair{1.0, 1.0}, {0.4, 2.0}, {3.0, 0.7}}) {
      check_vfuncs_consistency([&](double u, double v) { return schlather_v_funcs(u, v, rho); }, x,
                               y);
    }
  }
  CHECK_THROWS_AS(schlather_v_funcs(1.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("bivariate exponent functions") {
  // logistic closed form
  const BivariateSpec logistic{BivariateFamily::kLogistic, {0.6}};
  const double z1 = 1.4, z2 = 0.9;
  const VFuncs f = biv_v_funcs(logistic, z1, z2);
  const double expect =
      std::pow(std::pow(z1, -1.0 / 0.6) + std::pow(z2, -1.0 / 0.6), 0.6);
  CHECK(f.v == doctest::Approx(expect).epsilon(1e-13));

  for (const BivariateSpec& spec :
       {BivariateSpec{BivariateFamily::kLogistic, {0.35}},
        BivariateSpec{BivariateFamily::kAsymmetricLogistic, {0.5, 0.7}},
        BivariateSpec{BivariateFamily::kHuslerReiss, {0.9}}}) {
    CAPTURE(to_string(spec.family));
    for (auto [x, y] : {std::pair{1.0, 1.0}, {0.5, 2.5}, {4.0, 1.2}}) {
      check_vfuncs_consistency(
          [&](double u, double v) { return biv_v_funcs(spec, u, v); }, x, y);
    }
    // unit Frechet margins: V(z, huge) -> 1/z
    CHECK(biv_v_funcs(spec, 2.0, 1e9).v == doctest::Approx(0.5).epsilon(1e-6));
    // extremal coefficient equals V(1,1)
    CHECK(extremal_coefficient(spec) == doctest::Approx(biv_v_funcs(spec, 1.0, 1.0).v).epsilon(1e-12));
  }

  // independent logistic: V = 1/z1 + 1/z2
  const BivariateSpec indep{BivariateFamily::kLogistic, {1.0}};
  CHECK(biv_v_funcs(indep, z1, z2).v == doctest::Approx(1.0 / z1 + 1.0 / z2).epsilon(1e-13));

  CHECK_THROWS_AS(biv_v_funcs(BivariateSpec{BivariateFamily::kLogistic, {1.5}}, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(biv_v_funcs(BivariateSpec{BivariateFamily::kLogistic, {}}, 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("bivariate density differentiates the distribution") {
  // f(z1, z2) = (V1 V2 - V12) exp(-V); compare against mixed differences of
  // F = exp(-V) directly
  for (const BivariateSpec& spec :
       {BivariateSpec{BivariateFamily::kLogistic, {0.55}},
        BivariateSpec{BivariateFamily::kAsymmetricLogistic, {0.6, 0.4}},
        BivariateSpec{BivariateFamily::kHuslerReiss, {1.1}}}) {
    CAPTURE(to_string(spec.family));
    for (auto [z1, z2] : {std::pair{1.0, 1.5}, {0.7, 0.9}, {3.0, 2.0}}) {
      const double h1 = 1e-4 * z1, h2 = 1e-4 * z2;
      auto cdf = [&](double u, double v) { return std::exp(-biv_v_funcs(spec, u, v).v); };
      const double fd = (cdf(z1 + h1, z2 + h2) - cdf(z1 + h1, z2 - h2) - cdf(z1 - h1, z2 + h2) +
                         cdf(z1 - h1, z2 - h2)) /
                        (4 * h1 * h2);
      CHECK(std::exp(biv_log_density(spec, z1, z2)) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("max stable pair density differentiates the pair distribution") {
  const Eigen::Vector2d lag(1.0, 0.5);
  for (const MaxStableSpec& spec :
       {MaxStableSpec{MaxStableFamily::kSmith, {0.4, 0.2, 0.9}},
        MaxStableSpec{MaxStableFamily::kSchlather, {1.5, 1.0, 0.05}},
        MaxStableSpec{MaxStableFamily::kBrownResnick, {1.2, 0.8}}}) {
    CAPTURE(to_string(spec.family));
    for (auto [y1, y2] : {std::pair{1.0, 1.2}, {0.6, 2.2}}) {
      const double h1 = 1e-4 * y1, h2 = 1e-4 * y2;
      const double d = std::exp(max_stable_pair_log_density(spec, lag, y1, y2));
      auto cdf = [&](double u, double v) {
        VFuncs f;
        if (spec.family == MaxStableFamily::kSmith) {
          const double s11 = spec.params[0], s12 = spec.params[1], s22 = spec.params[2];
          const double det = s11 * s22 - s12 * s12;
          const double q = (lag(0) * lag(0) * s22 - 2.0 * lag(0) * lag(1) * s12 +
                            lag(1) * lag(1) * s11) / det;
          f = hr_v_funcs(u, v, std::sqrt(q));
        } else if (spec.family == MaxStableFamily::kSchlather) {
          const double rho = (1.0 - spec.params[2]) *
                             std::exp(-std::pow(lag.norm() / spec.params[0], spec.params[1]));
          f = schlather_v_funcs(u, v, rho);
        } else {
          const double g = std::pow(lag.norm() / spec.params[0], spec.params[1]);
          f = hr_v_funcs(u, v, std::sqrt(2.0 * g));
        }
        return std::exp(-f.v);
      };
      const double fd = (cdf(y1 + h1, y2 + h2) - cdf(y1 + h1, y2 - h2) - cdf(y1 - h1, y2 + h2) +
                         cdf(y1 - h1, y2 - h2)) /
                        (4 * h1 * h2);
      CHECK(d == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("extremal coefficients") {
  // logistic: 2^r
  CHECK(extremal_coefficient(BivariateSpec{BivariateFamily::kLogistic, {0.5}}) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // husler reiss: 2 Phi(lambda)
  CHECK(extremal_coefficient(BivariateSpec{BivariateFamily::kHuslerReiss, {0.7}}) ==
        doctest::Approx(2.0 * norm_cdf(0.7)).epsilon(1e-14));

  // smith: 2 Phi(sqrt(h' Sigma^{-1} h) / 2)
  const MaxStableSpec smith{MaxStableFamily::kSmith, {0.4, 0.2, 0.9}};
  const Eigen::Vector2d h(1.0, 2.0);
  Eigen::Matrix2d sig;
  sig << 0.4, 0.2, 0.2, 0.9;
  const double q = std::sqrt(h.dot(sig.inverse() * h));
  CHECK(extremal_coefficient(smith, h) == doctest::Approx(2.0 * norm_cdf(0.5 * q)).epsilon(1e-12));
  CHECK(extremal_coefficient(smith, Eigen::Vector2d(0.0, 0.0)) == doctest::Approx(1.0));

  // schlather never reaches independence: theta <= 1 + 1/sqrt(2)
  const MaxStableSpec schlather{MaxStableFamily::kSchlather, {1.0, 1.0, 0.0}};
  CHECK(extremal_coefficient(schlather, Eigen::Vector2d(100.0, 0.0)) <=
        1.0 + 1.0 / std::sqrt(2.0) + 1e-12);
  CHECK(extremal_coefficient(schlather, Eigen::Vector2d(0.0, 0.0)) == doctest::Approx(1.0));

  // brown resnick: 2 Phi(sqrt(gamma(h)/2)), monotone in distance
  const MaxStableSpec br{MaxStableFamily::kBrownResnick, {1.5, 1.0}};
  const double t1 = extremal_coefficient(br, Eigen::Vector2d(0.5, 0.0));
  const double t2 = extremal_coefficient(br, Eigen::Vector2d(2.0, 0.0));
  CHECK(t1 < t2);
  CHECK(t1 >= 1.0);
  CHECK(t2 <= 2.0);
  CHECK(extremal_coefficient(br, Eigen::Vector2d(1.0, 0.0)) ==
        doctest::Approx(2.0 * norm_cdf(std::sqrt(0.5 * std::pow(1.0 / 1.5, 1.0)))).epsilon(1e-12));

  CHECK_THROWS_AS(extremal_coefficient(MaxStableSpec{MaxStableFamily::kSmith, {1.0}}, h),
                  std::invalid_argument);
}

TEST_CASE("empirical extremal coefficient") {
  // comonotone pair: theta-hat = n / sum 1/y
  const std::vector<double> y = {1.0, 2.0, 4.0, 0.5};
  CHECK(empirical_extremal_coefficient(y, y) == doctest::Approx(4.0 / (1.0 + 0.5 + 0.25 + 2.0)));
  CHECK_THROWS_AS(empirical_extremal_coefficient({1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(empirical_extremal_coefficient({-1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("max stable simulation has the right margins and dependence") {
  const MaxStableSpec spec{MaxStableFamily::kSmith, {0.4, 0.2, 0.9}};
  const Eigen::MatrixXd coords = line_coords(3, 1.0);
  Rng rng(77);
  const int n = 4000;
  const Eigen::MatrixXd y = simulate_max_stable(spec, coords, n, rng);
  REQUIRE(y.rows() == n);
  REQUIRE(y.cols() == 3);
  CHECK(y.minCoeff() > 0.0);

  for (int j = 0; j < 3; ++j) {
    std::vector<double> col(n);
    for (int t = 0; t < n; ++t) col[t] = y(t, j);
    const double d = testsupport::ks_statistic(col, [](double x) { return std::exp(-1.0 / x); });
    CHECK(testsupport::ks_pvalue(d, n) > 0.01);
  }

  for (int j = 1; j < 3; ++j) {
    std::vector<double> a(n), b(n);
    for (int t = 0; t < n; ++t) {
      a[t] = y(t, 0);
      b[t] = y(t, j);
    }
    const double expected =
        extremal_coefficient(spec, (coords.row(j) - coords.row(0)).transpose());
    CHECK(empirical_extremal_coefficient(a, b) == doctest::Approx(expected).epsilon(0.05));
  }
}

TEST_CASE("bivariate simulation has the right margins and dependence") {
  for (const BivariateSpec& spec :
       {BivariateSpec{BivariateFamily::kLogistic, {0.6}},
        BivariateSpec{BivariateFamily::kHuslerReiss, {0.8}},
        BivariateSpec{BivariateFamily::kAsymmetricLogistic, {0.5, 0.6}}}) {
    CAPTURE(to_string(spec.family));
    Rng rng(31);
    const int n = 4000;
    const Eigen::MatrixXd y = simulate_biv_ev(spec, n, rng);
    REQUIRE(y.rows() == n);
    REQUIRE(y.cols() == 2);
    std::vector<double> a(n), b(n);
    for (int t = 0; t < n; ++t) {
      a[t] = y(t, 0);
      b[t] = y(t, 1);
    }
    const double d1 = testsupport::ks_statistic(a, [](double x) { return std::exp(-1.0 / x); });
    const double d2 = testsupport::ks_statistic(b, [](double x) { return std::exp(-1.0 / x); });
    CHECK(testsupport::ks_pvalue(d1, n) > 0.01);
    CHECK(testsupport::ks_pvalue(d2, n) > 0.01);
    CHECK(empirical_extremal_coefficient(a, b) ==
          doctest::Approx(extremal_coefficient(spec)).epsilon(0.05));
  }
}

TEST_CASE("conditional cdf is a distribution function consistent with the density") {
  const BivariateSpec spec{BivariateFamily::kLogistic, {0.45}};
  const double z1 = 1.1;
  double prev = 0.0;
  for (double z2 : {0.05, 0.3, 1.0, 3.0, 30.0, 1000.0}) {
    const double c = biv_conditional_cdf(spec, z1, z2);
    CHECK(c >= prev - 1e-12);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    prev = c;
  }
  CHECK(biv_conditional_cdf(spec, z1, 1e7) == doctest::Approx(1.0).epsilon(1e-4));

  // P(Z2 <= z2 | Z1 = z1) = dF/dz1 / marginal density
  for (double z2 : {0.5, 1.0, 2.5}) {
    const VFuncs f = biv_v_funcs(spec, z1, z2);
    const double joint = -f.v1 * std::exp(-f.v);
    const double marginal = std::exp(-1.0 / z1) / (z1 * z1);
    CHECK(biv_conditional_cdf(spec, z1, z2) == doctest::Approx(joint / marginal).epsilon(1e-10));
  }
}

TEST_CASE("bivariate likelihood fit recovers the dependence parameter") {
  const BivariateSpec truth{BivariateFamily::kLogistic, {0.6}};
  Rng rng(4);
  const Eigen::MatrixXd y = simulate_biv_ev(truth, 2000, rng);
  const BivariateFit fit = fit_biv_ev(y, BivariateFamily::kLogistic);
  REQUIRE(fit.converged);
  CHECK(fit.spec.params[0] == doctest::Approx(0.6).epsilon(0.08));
  CHECK(fit.aic == doctest::Approx(2.0 * fit.nll + 2.0).epsilon(1e-12));

  const BivariateFit hr = fit_biv_ev(y, BivariateFamily::kHuslerReiss);
  const BivariateFit selected = select_biv_ev(y, default_biv_candidates());
  CHECK(selected.converged);
  CHECK(selected.aic <= hr.aic + 1e-9);
}

TEST_CASE("composite likelihood fit recovers smith dependence") {
  const MaxStableSpec truth{MaxStableFamily::kSmith, {0.4, 0.2, 0.9}};
  const Eigen::MatrixXd coords = line_coords(5, 0.8);
  Rng rng(10);
  const Eigen::MatrixXd y = simulate_max_stable(truth, coords, 600, rng);
  const MaxStableFit fit = fit_max_stable(y, coords, MaxStableFamily::kSmith);
  REQUIRE(fit.converged);
  // clic = 2 (nll + positive penalty)
  CHECK(fit.clic > 2.0 * fit.pairwise_nll);
  // the fitted extremal coefficient curve is close to the truth at a moderate lag
  const Eigen::Vector2d lag(0.8, 0.0);
  CHECK(extremal_coefficient(fit.spec, lag) ==
        doctest::Approx(extremal_coefficient(truth, lag)).epsilon(0.08));
}

TEST_CASE("model selection prefers converged fits with smaller information criterion") {
  const MaxStableSpec truth{MaxStableFamily::kBrownResnick, {1.5, 0.9}};
  const Eigen::MatrixXd coords = line_coords(4, 1.0);
  Rng rng(17);
  const Eigen::MatrixXd y = simulate_max_stable(truth, coords, 500, rng);
  const MaxStableFit pick =
      select_max_stable(y, coords, {MaxStableFamily::kSmith, MaxStableFamily::kBrownResnick});
  REQUIRE(pick.converged);
  const MaxStableFit smith = fit_max_stable(y, coords, MaxStableFamily::kSmith);
  const MaxStableFit br = fit_max_stable(y, coords, MaxStableFamily::kBrownResnick);
  const double best = std::min(smith.converged ? smith.clic : 1e300,
                               br.converged ? br.clic : 1e300);
  CHECK(pick.clic == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("simulation input validation") {
  Rng rng(1);
  CHECK_THROWS_AS(
      simulate_max_stable(MaxStableSpec{MaxStableFamily::kSmith, {0.4, 0.2, 0.9}},
                          Eigen::MatrixXd::Zero(0, 2), 10, rng),
      std::invalid_argument);
  CHECK_THROWS_AS(
      simulate_max_stable(MaxStableSpec{MaxStableFamily::kSmith, {1.0, 0.0, 1.0}},
                          line_coords(2, 1.0), 0, rng),
      std::invalid_argument);
  // smith kernel must be positive definite
  CHECK_THROWS_AS(
      simulate_max_stable(MaxStableSpec{MaxStableFamily::kSmith, {1.0, 2.0, 1.0}},
                          line_coords(2, 1.0), 5, rng),
      std::invalid_argument);
  CHECK_THROWS_AS(simulate_biv_ev(BivariateSpec{BivariateFamily::kLogistic, {0.0}}, 5, rng),
                  std::invalid_argument);
}
