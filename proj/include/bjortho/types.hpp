#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bjortho {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kHalfPi = 0.5 * kPi;

/// Raised when a numerical result contradicts a structural guarantee the
/// library relies on (e.g. a direction scan that does not decompose into
/// two antipodal arcs). Carries the offending samples for inspection.
class StructuralViolation : public std::runtime_error {
 public:
  // (angle, classification code) pairs from the offending scan
  using Sample = std::pair<double, int>;

  StructuralViolation(const std::string& message, std::vector<Sample> samples = {})
      : std::runtime_error(message), samples_(std::move(samples)) {}

  const std::vector<Sample>& samples() const { return samples_; }

 private:
  std::vector<Sample> samples_;
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(const CVector& v, const char* name) {
  for (const Complex& z : v) {
    if (!is_finite(z)) {
      throw std::invalid_argument(std::string(name) + " contains a non-finite entry");
    }
  }
}

inline void require_same_dim(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
}

/// Wraps an angle into [0, 2*pi).
inline double wrap_angle_2pi(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Wraps an angle into [0, pi). Antipodal directions map to the same value.
inline double wrap_angle_pi(double theta) {
  double r = std::fmod(theta, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r = 0.0;
  return r;
}

/// Signed wrap into (-pi/2, pi/2]; used for small circular differences mod pi.
inline double wrap_signed_half_pi(double delta) {
  double r = std::fmod(delta, kPi);
  if (r > kHalfPi) r -= kPi;
  if (r <= -kHalfPi) r += kPi;
  return r;
}

/// A unit-modulus complex number gamma = e^{i theta}, stored as its argument
/// in [0, 2*pi) so that |gamma| = 1 holds by construction.
struct Direction {
  double theta = 0.0;

  static Direction from_angle(double t) { return Direction{wrap_angle_2pi(t)}; }

  static Direction from_complex(Complex z) {
    if (std::abs(z) == 0.0) throw std::invalid_argument("direction from zero complex number");
    return from_angle(std::arg(z));
  }

  Complex unit() const { return Complex(std::cos(theta), std::sin(theta)); }

  Direction antipode() const { return from_angle(theta + kPi); }
};

inline Complex conj(Complex z) { return std::conj(z); }

}  // namespace bjortho
