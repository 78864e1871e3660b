#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

namespace bjortho {

struct ScalarMinResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section minimization of a convex function on [lo, hi].
///
/// Derivative-free on purpose: the objectives in this library may be
/// non-differentiable (l1 / sup norms). Tracks the best value over every
/// probe, bracket endpoints included, so boundary minima are exact.
template <class F>
ScalarMinResult golden_section_min(F&& f, double lo, double hi,
                                   double width_tol, int max_iter = 200) {
  if (hi < lo) std::swap(lo, hi);
  constexpr double invphi = 0.6180339887498948482;

  ScalarMinResult best;
  int evals = 0;
  auto probe = [&](double x) {
    double v = f(x);
    ++evals;
    if (evals == 1 || v < best.value) {
      best.x = x;
      best.value = v;
    }
    return v;
  };

  probe(lo);
  probe(hi);
  if (hi - lo <= width_tol) {
    best.evaluations = evals;
    return best;
  }

  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = probe(x1);
  double f2 = probe(x2);
  for (int i = 0; i < max_iter && (b - a) > width_tol; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = probe(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = probe(x2);
    }
  }
  best.evaluations = evals;
  return best;
}

struct PlaneMinPoint {
  double u = 0.0;
  double v = 0.0;
  double value = 0.0;
};

/// Nested golden-section minimization of a jointly convex f(u, v) over
/// [lo, hi]^2. The outer sweep minimizes the partial minimum u -> min_v f,
/// which is again convex.
template <class F2>
PlaneMinPoint golden_section_min_2d(F2&& f, double lo, double hi,
                                    double outer_width_tol, double inner_width_tol,
                                    int max_iter = 200) {
  auto partial = [&](double u) {
    return golden_section_min([&](double v) { return f(u, v); }, lo, hi,
                              inner_width_tol, max_iter);
  };
  auto outer = golden_section_min([&](double u) { return partial(u).value; }, lo,
                                  hi, outer_width_tol, max_iter);
  ScalarMinResult inner = partial(outer.x);
  PlaneMinPoint out;
  out.u = outer.x;
  out.v = inner.x;
  out.value = std::min(outer.value, inner.value);
  return out;
}

/// Sign-change bisection: f must have opposite (nonzero) signs at the
/// bracket ends. Returns the midpoint of the final bracket, or NaN when the
/// bracket is invalid.
template <class F>
double bisect_sign_change(F&& f, double lo, double hi, double x_tol,
                          int max_iter = 128) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nan("");
  for (int i = 0; i < max_iter && (hi - lo) > x_tol; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace bjortho
