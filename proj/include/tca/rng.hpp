#pragma once

/**
 * Seeded sampling helpers. All randomness flows through mt19937_64 with
 * rejection sampling for bounded draws, so a fixed seed reproduces the same
 * draws on every platform and at every thread count (samples are always drawn
 * serially before any parallel evaluation).
 */

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "tca/group.hpp"

namespace tca {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }

  /// Uniform integer in [0, n), n >= 1, by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return v % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-1, 1).
  double sym() { return 2.0 * unit() - 1.0; }

  std::complex<double> cplx() {
    double re = sym();
    double im = sym();
    return {re, im};
  }

  /// Unimodular complex number.
  std::complex<double> phase() {
    double t = unit();
    return std::polar(1.0, 6.283185307179586476925286766559 * t);
  }

 private:
  std::mt19937_64 eng_;
};

/// Sampling pool: every element of a finite group, else a word-metric ball.
inline std::vector<Elem> sample_pool(const GroupCtx& G, std::int64_t radius) {
  return G.finite() ? G.elements() : G.ball(radius);
}

inline const Elem& pick(Rng& rng, const std::vector<Elem>& pool) {
  return pool[static_cast<std::size_t>(rng.below(pool.size()))];
}

}  // namespace tca
