#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace d2d {

// Deterministic RNG with explicit samplers. All randomness in the library
// flows through this class so that a (seed, stream) pair reproduces results
// bit-identically on any platform: std::mt19937_64 has a fixed sequence, and
// the distributions below avoid the implementation-defined ones in <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform double in (0, 1], safe as a log() argument.
  double uniform01_open() { return 1.0 - uniform01(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n) by rejection.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = eng_();
      if (r >= threshold) return r % n;
    }
  }

  bool bernoulli(double p) { return uniform01() < p; }

  double exponential(double rate) { return -std::log(uniform01_open()) / rate; }

  // Knuth's product method; fine for the means (<= ~30) used here.
  int poisson(double mean) {
    const double limit = std::exp(-mean);
    int k = 0;
    double prod = uniform01_open();
    while (prod > limit) {
      ++k;
      prod *= uniform01_open();
    }
    return k;
  }

  // Index into a cumulative distribution (cum.back() == 1).
  int discrete_cdf(std::span<const double> cum) {
    const double u = uniform01();
    for (std::size_t k = 0; k + 1 < cum.size(); ++k) {
      if (u < cum[k]) return static_cast<int>(k);
    }
    return static_cast<int>(cum.size()) - 1;
  }

  // Skip length for geometric edge sampling: number of failures before the
  // next success of a Bernoulli(p) sequence.
  std::int64_t geometric_skip(double p) {
    if (p >= 1.0) return 0;
    const double u = uniform01_open();
    return static_cast<std::int64_t>(std::floor(std::log(u) / std::log1p(-p)));
  }

  template <typename T>
  void shuffle(std::span<T> xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      std::size_t j = bounded(i);
      std::swap(xs[i - 1], xs[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

// SplitMix64 mix used to derive independent per-stream seeds from a master
// seed, e.g. one stream per Monte-Carlo sample.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(mix_seed(seed, stream));
}

}  // namespace d2d
