#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gevpool/rng.hpp"
#include "gevpool/special.hpp"
#include "gevpool/wald.hpp"
#include "support.hpp"

using namespace gevpool;

namespace {

std::vector<ScaleGevParams> three_thetas() {
  return {{20.0, 5.0, 0.10, 1.5}, {22.0, 5.5, 0.12, 1.8}, {19.0, 4.8, 0.08, 1.2}};
}

Eigen::MatrixXd random_spd(int dim, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = rng.normal();
  }
  return a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(dim, dim);
}

}  // namespace

TEST_CASE("h_of_theta stacks successive differences") {
  const auto thetas = three_thetas();
  const Eigen::VectorXd h = h_of_theta(thetas, {0, 1, 2});
  REQUIRE(h.size() == 8);
  CHECK(h(0) == doctest::Approx(2.0));    // mu_1 - mu_0
  CHECK(h(1) == doctest::Approx(0.5));    // sigma_1 - sigma_0
  CHECK(h(2) == doctest::Approx(0.02));   // gamma_1 - gamma_0
  CHECK(h(3) == doctest::Approx(0.3));    // alpha_1 - alpha_0
  CHECK(h(4) == doctest::Approx(-3.0));   // mu_2 - mu_1
  CHECK(h(7) == doctest::Approx(-0.6));   // alpha_2 - alpha_1
  CHECK_THROWS_AS(h_of_theta(thetas, {0}), std::invalid_argument);
  CHECK_THROWS_AS(h_of_theta(thetas, {0, 9}), std::invalid_argument);
}

TEST_CASE("jacobian_H is the exact derivative of h_of_theta") {
  const auto thetas = three_thetas();
  const std::vector<int> subset = {2, 0};
  const Eigen::MatrixXd jac = jacobian_H(subset, 3);
  REQUIRE(jac.rows() == 4);
  REQUIRE(jac.cols() == 12);
  // h is linear in the stacked parameters: jac * vec(theta) == h
  Eigen::VectorXd stacked(12);
  for (int j = 0; j < 3; ++j) {
    stacked.segment(4 * j, 4) << thetas[j].mu, thetas[j].sigma, thetas[j].gamma, thetas[j].alpha;
  }
  CHECK((jac * stacked - h_of_theta(thetas, subset)).norm() < 1e-14);
}

TEST_CASE("ed statistic is zero only at equal parameters") {
  auto thetas = three_thetas();
  const Eigen::MatrixXd sigma = random_spd(12, 77);
  CHECK(wald_statistic_ed(thetas, sigma, {0, 1, 2}, 100) > 0.0);
  thetas[1] = thetas[0];
  thetas[2] = thetas[0];
  CHECK(wald_statistic_ed(thetas, sigma, {0, 1, 2}, 100) == doctest::Approx(0.0));
}

TEST_CASE("ed statistic matches a direct evaluation") {
  const auto thetas = three_thetas();
  const std::vector<int> subset = {0, 2};
  const Eigen::MatrixXd sigma = random_spd(12, 3);
  const int n = 75;
  const Eigen::VectorXd h = h_of_theta(thetas, subset);
  const Eigen::MatrixXd jac = jacobian_H(subset, 3);
  const Eigen::MatrixXd mid = jac * sigma * jac.transpose();
  const double expected = n * h.dot(mid.inverse() * h);
  CHECK(wald_statistic_ed(thetas, sigma, subset, n) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("statistics do not depend on the subset ordering") {
  const auto thetas = three_thetas();
  const Eigen::MatrixXd sigma = random_spd(12, 9);
  const int n = 80;
  const double t_ed = wald_statistic_ed(thetas, sigma, {0, 1, 2}, n);
  for (const auto& perm :
       {std::vector<int>{2, 1, 0}, std::vector<int>{1, 0, 2}, std::vector<int>{0, 2, 1}}) {
    CHECK(wald_statistic_ed(thetas, sigma, perm, n) == doctest::Approx(t_ed).epsilon(1e-9));
  }
  const double t_ls = wald_statistic_ls(thetas, sigma, {0, 1, 2}, n);
  for (const auto& perm :
       {std::vector<int>{2, 1, 0}, std::vector<int>{1, 0, 2}, std::vector<int>{0, 2, 1}}) {
    CHECK(wald_statistic_ls(thetas, sigma, perm, n) == doctest::Approx(t_ls).epsilon(1e-9));
  }
}

TEST_CASE("statistics scale linearly in n") {
  const auto thetas = three_thetas();
  const Eigen::MatrixXd sigma = random_spd(12, 13);
  const double t1 = wald_statistic_ed(thetas, sigma, {0, 1}, 50);
  const double t2 = wald_statistic_ed(thetas, sigma, {0, 1}, 100);
  CHECK(t2 == doctest::Approx(2.0 * t1).epsilon(1e-12));
}

TEST_CASE("ls coordinates ignore a common rescaling") {
  auto thetas = three_thetas();
  // make location 1 exactly proportional to location 0
  const double c = 1.37;
  thetas[1].mu = c * thetas[0].mu;
  thetas[1].sigma = c * thetas[0].sigma;
  thetas[1].gamma = thetas[0].gamma;
  thetas[1].alpha = c * thetas[0].alpha;
  const Eigen::VectorXd g = g_of_theta_ls(thetas, {0, 1});
  CHECK(g.norm() < 1e-14);
  const Eigen::MatrixXd sigma = random_spd(12, 4);
  CHECK(wald_statistic_ls(thetas, sigma, {0, 1}, 60) == doctest::Approx(0.0));
  // the full-vector statistic still sees the difference
  CHECK(wald_statistic_ed(thetas, sigma, {0, 1}, 60) > 1.0);
}

TEST_CASE("g_of_theta_ls groups coordinates by kind") {
  const auto thetas = three_thetas();
  const Eigen::VectorXd g = g_of_theta_ls(thetas, {0, 1, 2});
  REQUIRE(g.size() == 6);
  CHECK(g(0) == doctest::Approx(22.0 / 5.5 - 20.0 / 5.0));
  CHECK(g(1) == doctest::Approx(19.0 / 4.8 - 22.0 / 5.5));
  CHECK(g(2) == doctest::Approx(0.02));
  CHECK(g(3) == doctest::Approx(-0.04));
  CHECK(g(4) == doctest::Approx(1.8 / 22.0 - 1.5 / 20.0));
  CHECK(g(5) == doctest::Approx(1.2 / 19.0 - 1.8 / 22.0));
}

TEST_CASE("jacobian_G_ls matches finite differences") {
  const auto thetas = three_thetas();
  const std::vector<int> subset = {0, 1, 2};
  const Eigen::MatrixXd jac = jacobian_G_ls(thetas, subset, 3);
  REQUIRE(jac.rows() == 6);
  REQUIRE(jac.cols() == 12);
  const double h = 1e-7;
  for (int j = 0; j < 3; ++j) {
    for (int r = 0; r < 4; ++r) {
      auto up = thetas;
      auto dn = thetas;
      double* pu = r == 0 ? &up[j].mu : r == 1 ? &up[j].sigma : r == 2 ? &up[j].gamma : &up[j].alpha;
      double* pd = r == 0 ? &dn[j].mu : r == 1 ? &dn[j].sigma : r == 2 ? &dn[j].gamma : &dn[j].alpha;
      *pu += h;
      *pd -= h;
      const Eigen::VectorXd fd = (g_of_theta_ls(up, subset) - g_of_theta_ls(dn, subset)) / (2 * h);
      for (int i = 0; i < 6; ++i) {
        CHECK(jac(i, 4 * j + r) == doctest::Approx(fd(i)).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("wald under gaussian parameter noise follows a chi-square") {
  // draw theta-hat differences directly from the assumed normal limit and
  // verify the statistic's distribution; this isolates the quadratic form
  const int dim = 8;  // two locations
  const Eigen::MatrixXd sigma = random_spd(dim, 21);
  const int n = 500;
  const Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(sigma / n).matrixL();
  const ScaleGevParams base{20.0, 5.0, 0.1, 1.5};
  Rng rng(2025);
  const int reps = 4000;
  std::vector<double> pvals(reps);
  for (int r = 0; r < reps; ++r) {
    Eigen::VectorXd z(dim);
    for (int i = 0; i < dim; ++i) z(i) = rng.normal();
    const Eigen::VectorXd delta = chol * z;
    std::vector<ScaleGevParams> thetas(2);
    for (int j = 0; j < 2; ++j) {
      thetas[j].mu = base.mu + delta(4 * j + 0);
      thetas[j].sigma = base.sigma + delta(4 * j + 1);
      thetas[j].gamma = base.gamma + delta(4 * j + 2);
      thetas[j].alpha = base.alpha + delta(4 * j + 3);
    }
    const double t = wald_statistic_ed(thetas, sigma, {0, 1}, n);
    pvals[r] = chi_square_upper_tail(t, 4);
  }
  const double d = testsupport::ks_statistic(pvals, [](double x) { return x; });
  CHECK(testsupport::ks_pvalue(d, reps) > 0.01);
}
