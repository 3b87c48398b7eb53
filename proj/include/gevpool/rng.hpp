#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gevpool {

// SplitMix64 finalizer; decorrelates nearby inputs.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream split: one master seed plus up to three counters
// (e.g. purpose, target index, replicate index) give an independent seed.
// Each stage carries its own constant so that swapping the master with a
// counter, or one counter with another, lands in a different stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = mix64(master);
  s = mix64(s ^ mix64(a ^ 0x8e9d3aab3f2c9e1bULL));
  s = mix64(s ^ mix64(b ^ 0x715ea37cf0d6c89fULL));
  s = mix64(s ^ mix64(c ^ 0x2b99f34d8c77a52dULL));
  return s;
}

// mt19937_64 with fixed output transforms, so sequences do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // strictly inside (0,1)
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

  double exponential() { return -std::log(uniform()); }

  // unit Frechet: cdf exp(-1/y) on y > 0
  double frechet() { return -1.0 / std::log(uniform()); }

  // uniform over {0, ..., n-1}
  int uniform_int(int n) {
    int k = static_cast<int>(static_cast<double>(n) * uniform());
    return k < n ? k : n - 1;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace gevpool
