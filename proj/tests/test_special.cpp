#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "gevpool/special.hpp"

using namespace gevpool;

TEST_CASE("standard normal pdf and cdf") {
  CHECK(norm_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
  CHECK(norm_pdf(2.0) == doctest::Approx(std::exp(-2.0) * 0.3989422804014327).epsilon(1e-14));
  CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(norm_cdf(1.3) == doctest::Approx(0.9031995154143897).epsilon(1e-14));
  CHECK(norm_cdf(-2.7) == doctest::Approx(0.0034669738030406647).epsilon(1e-13));
  CHECK(norm_cdf(-40.0) == doctest::Approx(0.0));
  CHECK(norm_cdf(40.0) == doctest::Approx(1.0));
  // symmetry
  for (double x : {0.1, 0.7, 1.9, 3.3}) {
    CHECK(norm_cdf(x) + norm_cdf(-x) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("normal quantile inverts the cdf") {
  CHECK(norm_quantile(0.001) == doctest::Approx(-3.090232306167813).epsilon(1e-12));
  CHECK(norm_quantile(0.9995) == doctest::Approx(3.2905267314919255).epsilon(1e-12));
  CHECK(norm_quantile(0.5) == doctest::Approx(0.0));
  for (double p : {1e-8, 1e-4, 0.025, 0.31, 0.5, 0.84, 0.975, 1.0 - 1e-6}) {
    CHECK(norm_cdf(norm_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(norm_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(norm_quantile(1.0), std::domain_error);
}

TEST_CASE("regularized incomplete gamma") {
  CHECK(reg_lower_gamma(2.5, 1.7) == doctest::Approx(0.36143007689620493).epsilon(1e-12));
  CHECK(reg_upper_gamma(0.8, 3.1) == doctest::Approx(0.029349251602833686).epsilon(1e-12));
  CHECK(reg_lower_gamma(10.0, 9.0) == doctest::Approx(0.4125917556680583).epsilon(1e-12));
  // a = 1 reduces to the exponential cdf
  for (double x : {0.2, 1.0, 4.5}) {
    CHECK(reg_lower_gamma(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-13));
  }
  for (double a : {0.3, 1.0, 5.0, 40.0}) {
    for (double x : {0.1, 2.0, 30.0}) {
      CHECK(reg_lower_gamma(a, x) + reg_upper_gamma(a, x) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  CHECK(reg_lower_gamma(3.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("chi-square upper tail") {
  CHECK(chi_square_upper_tail(3.5, 7) == doctest::Approx(0.8352254826103422).epsilon(1e-12));
  CHECK(chi_square_upper_tail(12.8, 4) == doctest::Approx(0.012295523821487112).epsilon(1e-12));
  CHECK(chi_square_upper_tail(25.0, 12) == doctest::Approx(0.014822874597441575).epsilon(1e-12));
  CHECK(chi_square_upper_tail(0.3, 1) == doctest::Approx(0.583882420770365).epsilon(1e-12));
  CHECK(chi_square_upper_tail(60.0, 3) == doctest::Approx(5.878230727906921e-13).epsilon(1e-9));
  // df = 2 is exponential, df = 4 has the closed form e^{-x/2}(1 + x/2)
  for (double x : {0.5, 2.0, 9.0}) {
    CHECK(chi_square_upper_tail(x, 2) == doctest::Approx(std::exp(-0.5 * x)).epsilon(1e-13));
    CHECK(chi_square_upper_tail(x, 4) ==
          doctest::Approx(std::exp(-0.5 * x) * (1.0 + 0.5 * x)).epsilon(1e-13));
  }
  CHECK(chi_square_upper_tail(0.0, 5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(chi_square_upper_tail(1.0, 0), std::domain_error);
  CHECK_THROWS_AS(chi_square_upper_tail(-0.1, 3), std::domain_error);
}
