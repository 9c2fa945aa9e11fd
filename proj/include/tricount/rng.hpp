#pragma once

#include <cstdint>
#include <limits>

namespace tricount {

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
///
/// Every estimator copy owns one of these; seeding is a single word so
/// millions of copies can be spun up cheaply, and all derived quantities
/// (uniform doubles, bounded integers) are computed here rather than through
/// <random> distributions so that output is identical across standard
/// library implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// True with probability p (p >= 1 always true, p <= 0 always false).
  /// Always consumes exactly one draw.
  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 prod = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        prod = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

 private:
  std::uint64_t state_;
};

/// Mixes a word through the SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Splittable seed derivation: (seed, i, j, ...) -> independent 64-bit key.
/// Order matters; derive_seed(s, a, b) != derive_seed(s, b, a) in general.
constexpr std::uint64_t derive_seed(std::uint64_t seed) { return seed; }

template <typename... Rest>
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, Rest... rest) {
  return derive_seed(mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL)), static_cast<std::uint64_t>(rest)...);
}

}  // namespace tricount
