#pragma once

#include <cmath>
#include <optional>

#include "bjortho/minimize.hpp"
#include "bjortho/spaces.hpp"
#include "bjortho/types.hpp"

namespace bjortho {

namespace detail {

/// phi(t) = || base + t * step ||, evaluated without reallocating.
struct LineFunction {
  const NormSpec* space;
  CVector base;
  CVector step;
  mutable CVector buf;

  LineFunction(const NormSpec& s, CVector b, CVector st)
      : space(&s), base(std::move(b)), step(std::move(st)), buf(base.size()) {}

  double operator()(double t) const {
    for (std::size_t j = 0; j < base.size(); ++j) buf[j] = base[j] + t * step[j];
    return norm(*space, buf);
  }
};

struct UnitPair {
  CVector x;  // x / ||x||
  CVector y;  // y / ||y||
  double norm_x = 0.0;
  double norm_y = 0.0;
  bool degenerate = false;  // either input numerically zero
};

inline UnitPair normalize_pair(const NormSpec& space, const CVector& x, const CVector& y) {
  UnitPair p;
  p.norm_x = norm(space, x);
  p.norm_y = norm(space, y);
  p.x = x;
  p.y = y;
  if (p.norm_x <= 0.0 || p.norm_y <= 0.0) {
    p.degenerate = true;
    return p;
  }
  for (Complex& z : p.x) z /= p.norm_x;
  for (Complex& z : p.y) z /= p.norm_y;
  return p;
}

inline CVector scaled_direction(const CVector& y, Complex gamma) {
  CVector s(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) s[j] = gamma * y[j];
  return s;
}

// Any |t| > 2 has ||x + t g y|| >= |t| - 1 > 1 = ||x|| for unit x, y, so the
// global minimizer of the convex line map lives in [-2, 2].
inline constexpr double kUnitBracket = 2.0;
inline constexpr double kLineWidthTol = 2e-12;

}  // namespace detail

struct LineMinResult {
  double t_star = 0.0;
  double min_value = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
};

/// Global minimum of the convex map t -> ||x + t gamma y|| over the real
/// line. Results are reported in the original (unnormalized) scale.
inline LineMinResult min_norm_over_line(const NormSpec& space, const CVector& x,
                                        const CVector& y, Direction gamma) {
  detail::UnitPair p = detail::normalize_pair(space, x, y);
  LineMinResult r;
  if (p.norm_y <= 0.0) {  // constant map
    r.min_value = p.norm_x;
    return r;
  }
  if (p.norm_x <= 0.0) {  // ||t gamma y|| minimized at 0
    return r;
  }
  detail::LineFunction phi(space, p.x, detail::scaled_direction(p.y, gamma.unit()));
  ScalarMinResult m = golden_section_min(phi, -detail::kUnitBracket, detail::kUnitBracket,
                                         detail::kLineWidthTol);
  double scale_t = p.norm_x / p.norm_y;
  r.t_star = m.x * scale_t;
  r.min_value = m.value * p.norm_x;
  r.t_lo = -detail::kUnitBracket * scale_t;
  r.t_hi = detail::kUnitBracket * scale_t;
  return r;
}

struct PlaneMinResult {
  Complex lambda_star{0.0, 0.0};
  double min_value = 0.0;
};

/// Global minimum of the jointly convex map lambda -> ||x + lambda y|| over
/// the complex plane (nested golden section over Re/Im).
inline PlaneMinResult min_norm_over_plane(const NormSpec& space, const CVector& x,
                                          const CVector& y) {
  detail::UnitPair p = detail::normalize_pair(space, x, y);
  PlaneMinResult r;
  if (p.norm_y <= 0.0) {
    r.min_value = p.norm_x;
    return r;
  }
  if (p.norm_x <= 0.0) return r;
  detail::LineFunction re_step(space, p.x, p.y);
  CVector buf(p.x.size());
  auto f = [&](double u, double v) {
    const Complex lam(u, v);
    for (std::size_t j = 0; j < p.x.size(); ++j) buf[j] = p.x[j] + lam * p.y[j];
    return norm(space, buf);
  };
  PlaneMinPoint m = golden_section_min_2d(f, -detail::kUnitBracket, detail::kUnitBracket,
                                          2e-10, 2e-11);
  double scale = p.norm_x / p.norm_y;
  r.lambda_star = Complex(m.u, m.v) * scale;
  r.min_value = m.value * p.norm_x;
  return r;
}

/// Outcome of an orthogonality decision; converts to bool. `degenerate`
/// reports that one of the inputs was numerically zero, in which case the
/// inequality holds vacuously and the verdict is true.
struct OrthogonalityVerdict {
  bool orthogonal = false;
  bool degenerate = false;
  double min_value = 0.0;
  double reference_norm = 0.0;  // ||x||
  double t_star = 0.0;          // line mode
  Complex lambda_star{0.0, 0.0};  // plane mode

  explicit operator bool() const { return orthogonal; }
};

/// x is orthogonal to y in direction gamma when ||x + t gamma y|| >= ||x||
/// for every real t. Decided as min >= ||x|| (1 - tol).
inline OrthogonalityVerdict is_dir_orthogonal(const NormSpec& space, const CVector& x,
                                              const CVector& y, Direction gamma,
                                              double tol = 1e-8) {
  OrthogonalityVerdict v;
  v.reference_norm = norm(space, x);
  double ny = norm(space, y);
  if (v.reference_norm <= 0.0 || ny <= 0.0) {
    v.orthogonal = true;
    v.degenerate = true;
    v.min_value = v.reference_norm;
    return v;
  }
  LineMinResult m = min_norm_over_line(space, x, y, gamma);
  v.min_value = m.min_value;
  v.t_star = m.t_star;
  v.orthogonal = m.min_value >= v.reference_norm * (1.0 - tol);
  return v;
}

/// Birkhoff-James orthogonality: ||x + lambda y|| >= ||x|| for all complex
/// lambda.
inline OrthogonalityVerdict is_bj_orthogonal(const NormSpec& space, const CVector& x,
                                             const CVector& y, double tol = 1e-8) {
  OrthogonalityVerdict v;
  v.reference_norm = norm(space, x);
  double ny = norm(space, y);
  if (v.reference_norm <= 0.0 || ny <= 0.0) {
    v.orthogonal = true;
    v.degenerate = true;
    v.min_value = v.reference_norm;
    return v;
  }
  PlaneMinResult m = min_norm_over_plane(space, x, y);
  v.min_value = m.min_value;
  v.lambda_star = m.lambda_star;
  v.orthogonal = m.min_value >= v.reference_norm * (1.0 - tol);
  return v;
}

/// Sign classification of y against x along gamma: `both` when the norm
/// inequality holds on the whole line, otherwise the side on which it holds.
enum class PartClassification { both, plus_only, minus_only };

namespace detail {

struct PartSignDetail {
  PartClassification value = PartClassification::both;
  double min_plus = 0.0;   // min over t >= 0 (normalized scale)
  double min_minus = 0.0;  // min over t <= 0
};

inline PartSignDetail part_sign_detail(const NormSpec& space, const CVector& x,
                                       const CVector& y, Direction gamma, double tol) {
  PartSignDetail d;
  UnitPair p = normalize_pair(space, x, y);
  if (p.degenerate) {
    d.min_plus = d.min_minus = 1.0;
    return d;
  }
  LineFunction phi(space, p.x, scaled_direction(p.y, gamma.unit()));
  ScalarMinResult plus = golden_section_min(phi, 0.0, kUnitBracket, kLineWidthTol);
  ScalarMinResult minus = golden_section_min(phi, -kUnitBracket, 0.0, kLineWidthTol);
  d.min_plus = plus.value;
  d.min_minus = minus.value;
  const double thr = 1.0 - tol;
  bool ok_plus = plus.value >= thr;
  bool ok_minus = minus.value >= thr;
  if (ok_plus && ok_minus) {
    d.value = PartClassification::both;
  } else if (ok_plus) {
    d.value = PartClassification::plus_only;
  } else if (ok_minus) {
    d.value = PartClassification::minus_only;
  } else {
    // convexity makes a dip on both sides of t = 0 impossible; under float
    // noise report the side that is closer to holding
    d.value = plus.value >= minus.value ? PartClassification::plus_only
                                        : PartClassification::minus_only;
  }
  return d;
}

/// One-sided derivative of t -> ||x + t gamma y|| at t = 0, by forward or
/// backward difference on unit-normalized inputs.
inline double one_sided_derivative(const NormSpec& space, const CVector& x_unit,
                                   const CVector& y_unit, Complex gamma, int side,
                                   double h = 3e-8) {
  LineFunction phi(space, x_unit, scaled_direction(y_unit, gamma));
  double n0 = phi(0.0);
  if (side >= 0) return (phi(h) - n0) / h;
  return (n0 - phi(-h)) / h;
}

}  // namespace detail

inline PartClassification part_sign(const NormSpec& space, const CVector& x,
                                    const CVector& y, Direction gamma, double tol = 1e-8) {
  return detail::part_sign_detail(space, x, y, gamma, tol).value;
}

/// Hilbert-space closed form: x is gamma-orthogonal to y exactly when
/// Re(gamma <y, x>) = 0.
inline bool dir_orthogonal_hilbert(const CVector& x, const CVector& y, Direction gamma,
                                   double tol = 1e-10) {
  double nx = std::sqrt(std::abs(inner(x, x).real()));
  double ny = std::sqrt(std::abs(inner(y, y).real()));
  if (nx <= 0.0 || ny <= 0.0) return true;
  double re = (gamma.unit() * inner(y, x)).real();
  return std::abs(re) <= tol * nx * ny;
}

}  // namespace bjortho
