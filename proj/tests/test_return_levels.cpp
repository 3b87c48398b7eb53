#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gevpool/return_levels.hpp"
#include "gevpool/rng.hpp"

using namespace gevpool;

TEST_CASE("local return level closed forms") {
  // RL(T) is the 1 - 1/T quantile of the effective distribution
  CHECK(local_rl({20.0, 5.5, 0.1, 1.5}, 100.0, 0.925) ==
        doctest::Approx(55.869955398084866).epsilon(1e-12));
  CHECK(local_rl({15.0, 4.0, -0.15, -0.8}, 50.0, 0.4) ==
        doctest::Approx(26.248838873317312).epsilon(1e-12));
  const ScaleGevParams theta{20.0, 5.5, 0.1, 1.5};
  CHECK(local_rl(theta, 100.0, 0.925) ==
        doctest::Approx(gev_quantile(0.99, effective_params(theta, 0.925))).epsilon(1e-14));
  // monotone in T
  CHECK(local_rl(theta, 200.0, 0.925) > local_rl(theta, 100.0, 0.925));
  CHECK_THROWS_AS(local_rl(theta, 1.0, 0.925), std::invalid_argument);
  CHECK_THROWS_AS(local_rl(theta, 0.5, 0.925), std::invalid_argument);
}

TEST_CASE("type 7 quantile and cdf") {
  const std::vector<double> s = {1.0, 2.0, 4.0, 8.0};
  CHECK(type7_quantile(s, 0.0) == doctest::Approx(1.0));
  CHECK(type7_quantile(s, 1.0) == doctest::Approx(8.0));
  CHECK(type7_quantile(s, 0.5) == doctest::Approx(3.0));   // midway between 2 and 4
  CHECK(type7_quantile(s, 1.0 / 3.0) == doctest::Approx(2.0));
  CHECK(type7_quantile(s, 0.25) == doctest::Approx(1.75));
  CHECK(type7_cdf(s, 0.5) == doctest::Approx(0.0));
  CHECK(type7_cdf(s, 9.0) == doctest::Approx(1.0));
  CHECK(type7_cdf(s, 3.0) == doctest::Approx(0.5));
  // cdf inverts the quantile at interior probabilities
  for (double q : {0.1, 0.4, 0.75, 0.95}) {
    CHECK(type7_cdf(s, type7_quantile(s, q)) == doctest::Approx(q).epsilon(1e-12));
  }
}

TEST_CASE("regional estimate on a single site reduces to the local one") {
  const ScaleGevParams theta{20.0, 5.5, 0.1, 1.5};
  const MaxStableSpec spec{MaxStableFamily::kSmith, {1.0, 0.0, 1.0}};
  Eigen::MatrixXd coords(1, 2);
  coords << 0.0, 0.0;
  ReturnSpec rs;
  rs.T = 100.0;
  rs.reference_c = 0.925;
  Rng rng(3);
  const RegionalEstimate est = regional_rl_rp(theta, spec, coords, rs, 60000, rng);
  CHECK(est.local == doctest::Approx(55.869955398084866).epsilon(1e-12));
  CHECK(est.rl_regional == doctest::Approx(est.local).epsilon(0.02));
  CHECK(est.rp_regional == doctest::Approx(100.0).epsilon(0.10));
  CHECK(est.B_sim == 60000);
}

TEST_CASE("regional level dominates the local level and the period does not exceed T") {
  const ScaleGevParams theta{20.0, 5.5, 0.1, 1.5};
  const MaxStableSpec spec{MaxStableFamily::kSmith, {0.4, 0.2, 0.9}};
  Eigen::MatrixXd coords(4, 2);
  coords << 0, 0, 1, 0, 0, 1, 1, 1;
  ReturnSpec rs;
  rs.T = 100.0;
  rs.reference_c = 0.925;
  Rng rng(5);
  const RegionalEstimate est = regional_rl_rp(theta, spec, coords, rs, 40000, rng);
  CHECK(est.rl_regional >= est.local * (1.0 - 0.005));
  CHECK(est.rp_regional <= 100.0 * (1.0 + 1e-9));
  CHECK(est.rp_regional > 1.0);
  // the cdf summary is sorted in both axes
  REQUIRE(est.cdf_probs.size() == est.cdf_values.size());
  REQUIRE(est.cdf_probs.size() >= 3);
  for (std::size_t i = 1; i < est.cdf_probs.size(); ++i) {
    CHECK(est.cdf_probs[i] > est.cdf_probs[i - 1]);
    CHECK(est.cdf_values[i] >= est.cdf_values[i - 1]);
  }
}

TEST_CASE("near independent sites match the product form oracle") {
  // a tiny smith kernel makes distinct sites essentially independent
  const ScaleGevParams theta{20.0, 5.5, 0.1, 1.5};
  const MaxStableSpec spec{MaxStableFamily::kSmith, {1e-4, 0.0, 1e-4}};
  Eigen::MatrixXd coords(2, 2);
  coords << 0, 0, 5, 0;
  ReturnSpec rs;
  rs.T = 50.0;
  rs.reference_c = 0.925;
  Rng rng(11);
  const RegionalEstimate est = regional_rl_rp(theta, spec, coords, rs, 50000, rng);
  // RP at r: 1 / (1 - G(r)^2) with G the common effective margin
  const double g = gev_cdf(est.local, effective_params(theta, 0.925));
  const double oracle_rp = 1.0 / (1.0 - g * g);
  CHECK(est.rp_regional == doctest::Approx(oracle_rp).epsilon(0.10));
  // regional level solves G(r)^2 = 1 - 1/T
  const double oracle_rl = gev_quantile(std::sqrt(1.0 - 1.0 / 50.0),
                                        effective_params(theta, 0.925));
  CHECK(est.rl_regional == doctest::Approx(oracle_rl).epsilon(0.02));
}

TEST_CASE("an event beyond the simulated range caps the return period") {
  const ScaleGevParams theta{20.0, 5.5, 0.1, 1.5};
  const MaxStableSpec spec{MaxStableFamily::kSmith, {0.4, 0.2, 0.9}};
  Eigen::MatrixXd coords(2, 2);
  coords << 0, 0, 1, 0;
  ReturnSpec rs;
  rs.T = 100.0;
  rs.reference_c = 0.925;
  rs.has_r = true;
  rs.r = 1e9;
  Rng rng(13);
  const RegionalEstimate est = regional_rl_rp(theta, spec, coords, rs, 2000, rng);
  CHECK(est.rp_regional == doctest::Approx(2000.0));
  bool warned = false;
  for (const auto& w : est.warnings) {
    warned = warned || w.find("capped") != std::string::npos;
  }
  CHECK(warned);
}

TEST_CASE("small simulation counts carry a warning") {
  const ScaleGevParams theta{20.0, 5.5, 0.1, 1.5};
  const MaxStableSpec spec{MaxStableFamily::kSmith, {1.0, 0.0, 1.0}};
  Eigen::MatrixXd coords(1, 2);
  coords << 0.0, 0.0;
  ReturnSpec rs;
  Rng rng(1);
  const RegionalEstimate est = regional_rl_rp(theta, spec, coords, rs, 500, rng);
  CHECK(!est.warnings.empty());
}

TEST_CASE("regional estimation is deterministic in the seed") {
  const ScaleGevParams theta{20.0, 5.5, 0.1, 1.5};
  const MaxStableSpec spec{MaxStableFamily::kSmith, {0.4, 0.2, 0.9}};
  Eigen::MatrixXd coords(3, 2);
  coords << 0, 0, 1, 0, 0, 1;
  ReturnSpec rs;
  Rng r1(21), r2(21);
  const RegionalEstimate a = regional_rl_rp(theta, spec, coords, rs, 3000, r1);
  const RegionalEstimate b = regional_rl_rp(theta, spec, coords, rs, 3000, r2);
  CHECK(a.rl_regional == b.rl_regional);
  CHECK(a.rp_regional == b.rp_regional);
}

TEST_CASE("regional estimation input validation") {
  const ScaleGevParams theta{20.0, 5.5, 0.1, 1.5};
  const MaxStableSpec spec{MaxStableFamily::kSmith, {1.0, 0.0, 1.0}};
  Eigen::MatrixXd coords(1, 2);
  coords << 0.0, 0.0;
  ReturnSpec rs;
  Rng rng(1);
  rs.T = 1.0;
  CHECK_THROWS_AS(regional_rl_rp(theta, spec, coords, rs, 100, rng), std::invalid_argument);
  rs.T = 100.0;
  CHECK_THROWS_AS(regional_rl_rp(theta, spec, coords, rs, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(regional_rl_rp(theta, spec, Eigen::MatrixXd::Zero(0, 2), rs, 100, rng),
                  std::invalid_argument);
}
