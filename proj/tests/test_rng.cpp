#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "gevpool/rng.hpp"
#include "gevpool/special.hpp"
#include "support.hpp"

using namespace gevpool;

TEST_CASE("rng streams are deterministic per seed") {
  Rng a(42), b(42), c(43);
  bool all_equal = true;
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    all_equal = all_equal && (x == b.uniform());
    any_diff = any_diff || (x != c.uniform());
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("derive_seed separates streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t m : {0ULL, 1ULL, 42ULL}) {
    for (std::uint64_t a = 0; a < 4; ++a) {
      for (std::uint64_t b = 0; b < 4; ++b) {
        seen.insert(derive_seed(m, a, b));
      }
    }
  }
  CHECK(seen.size() == 3 * 4 * 4);
  CHECK(derive_seed(7, 1, 2, 3) == derive_seed(7, 1, 2, 3));
  CHECK(derive_seed(7, 1, 2, 3) != derive_seed(7, 1, 3, 2));
  // the master seed and the counters occupy distinct roles
  CHECK(derive_seed(0, 1) != derive_seed(1, 0));
  CHECK(derive_seed(0, 0) != derive_seed(1, 1));
  CHECK(derive_seed(10, 11, 5) != derive_seed(11, 10, 5));
}

TEST_CASE("uniform stays strictly inside the unit interval") {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("samplers match their distributions") {
  const int n = 20000;
  Rng rng(2024);

  std::vector<double> u(n), z(n), e(n), f(n);
  for (int i = 0; i < n; ++i) u[i] = rng.uniform();
  for (int i = 0; i < n; ++i) z[i] = rng.normal();
  for (int i = 0; i < n; ++i) e[i] = rng.exponential();
  for (int i = 0; i < n; ++i) f[i] = rng.frechet();

  auto p = [&](std::vector<double> s, auto cdf) {
    return testsupport::ks_pvalue(testsupport::ks_statistic(std::move(s), cdf), n);
  };
  CHECK(p(u, [](double x) { return x; }) > 0.01);
  CHECK(p(z, [](double x) { return norm_cdf(x); }) > 0.01);
  CHECK(p(e, [](double x) { return 1.0 - std::exp(-x); }) > 0.01);
  CHECK(p(f, [](double x) { return std::exp(-1.0 / x); }) > 0.01);
}

TEST_CASE("uniform_int covers the range uniformly") {
  Rng rng(5);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const int k = rng.uniform_int(7);
    REQUIRE(k >= 0);
    REQUIRE(k < 7);
    counts[k] += 1;
  }
  for (int k = 0; k < 7; ++k) {
    CHECK(std::abs(counts[k] - n / 7) < 5 * std::sqrt(static_cast<double>(n) / 7));
  }
}
