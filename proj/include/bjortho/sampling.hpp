#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bjortho/types.hpp"

namespace bjortho {

/// Deterministic random source. Uniform doubles are produced directly from
/// the mt19937_64 stream (not through std distributions, whose output is
/// implementation-defined), so a seed pins the byte-exact sample sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    // 53 random bits -> [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t bits() { return gen_(); }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

  double normal() {
    // Box-Muller; no cached spare, keeps the stream position predictable
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  Complex complex_normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    return Complex(r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2));
  }

  /// Complex Gaussian vector, not normalized.
  CVector complex_vector(std::size_t n) {
    CVector v(n);
    for (auto& z : v) z = complex_normal();
    return v;
  }

  /// Uniform point on the Euclidean unit sphere of C^n.
  CVector unit_vector(std::size_t n) {
    for (;;) {
      CVector v = complex_vector(n);
      double s = 0.0;
      for (const Complex& z : v) s += std::norm(z);
      if (s > 1e-30) {
        double inv = 1.0 / std::sqrt(s);
        for (Complex& z : v) z *= inv;
        return v;
      }
    }
  }

  Direction direction() { return Direction::from_angle(uniform(0.0, kTwoPi)); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace bjortho
