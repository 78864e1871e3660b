#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "bjortho/arcs.hpp"
#include "bjortho/orthogonality.hpp"
#include "bjortho/spaces.hpp"

namespace bjortho {

namespace detail {

inline double max_modulus(const CVector& x) {
  double m = 0.0;
  for (const Complex& z : x) m = std::max(m, std::abs(z));
  return m;
}

// coordinates this small count as zero for support/argmax decisions
inline double zero_band(const CVector& x) { return 1e-15 * max_modulus(x); }

}  // namespace detail

/// Shape of the norming set J(x) beyond its base element. Smooth families
/// have a singleton; the l1 face is a product of discs over the zero
/// coordinates; the sup-norm face is a simplex over the max-modulus
/// coordinates.
struct NormingFace {
  enum class Kind { singleton, l1_discs, linf_simplex };
  Kind kind = Kind::singleton;
  std::vector<std::size_t> indices;    // free coordinates (l1) or argmax coordinates (linf)
  std::vector<double> radii;           // l1: |f_j| <= radius per free coordinate
  std::vector<Complex> vertex_coeffs;  // linf: coefficient of e_j at each simplex vertex
};

struct NormingSet {
  Functional base;
  bool is_singleton = true;
  NormingFace face;
};

/// Whether x is a smooth point of its space (unique norming functional).
/// Decided by the closed-form family criteria.
inline bool is_smooth_point(const NormSpec& space, const CVector& x) {
  if (norm(space, x) <= 0.0) throw std::invalid_argument("is_smooth_point: zero vector");
  switch (space.kind()) {
    case NormSpec::Kind::hilbert:
      return true;
    case NormSpec::Kind::lp:
    case NormSpec::Kind::weighted_lp: {
      if (space.smooth_family()) return true;
      const double band = detail::zero_band(x);
      if (space.p() == 1.0) {
        for (const Complex& z : x)
          if (std::abs(z) <= band) return false;
        return true;
      }
      // p = inf: smooth iff the (weighted) max modulus is attained once
      double best = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j)
        best = std::max(best, detail::coordinate_weight(space, j) * std::abs(x[j]));
      std::size_t hits = 0;
      for (std::size_t j = 0; j < x.size(); ++j)
        if (detail::coordinate_weight(space, j) * std::abs(x[j]) >= best * (1.0 - 1e-12)) ++hits;
      return hits == 1;
    }
    case NormSpec::Kind::operator_norm:
      throw std::invalid_argument("is_smooth_point: operator-norm spaces are not supported");
  }
  throw std::logic_error("is_smooth_point: unreachable");
}

/// One norming functional of x (f(x) = ||x||, ||f||_* = 1) together with a
/// description of the full norming face for the non-smooth families.
inline NormingSet norming_set(const NormSpec& space, const CVector& x) {
  double nx = norm(space, x);
  if (nx <= 0.0) throw std::invalid_argument("norming_set: zero vector");
  const std::size_t n = x.size();
  NormingSet out;
  out.base.coefficients.assign(n, Complex(0.0, 0.0));
  const double band = detail::zero_band(x);

  switch (space.kind()) {
    case NormSpec::Kind::hilbert: {
      for (std::size_t j = 0; j < n; ++j) out.base.coefficients[j] = std::conj(x[j]) / nx;
      return out;
    }
    case NormSpec::Kind::lp:
    case NormSpec::Kind::weighted_lp: {
      const double p = space.p();
      if (space.smooth_family()) {
        const double denom = std::pow(nx, p - 1.0);
        for (std::size_t j = 0; j < n; ++j) {
          double a = std::abs(x[j]);
          if (a <= band) continue;
          double w = detail::coordinate_weight(space, j);
          out.base.coefficients[j] = w * std::conj(x[j]) * std::pow(a, p - 2.0) / denom;
        }
        return out;
      }
      if (p == 1.0) {
        out.face.kind = NormingFace::Kind::l1_discs;
        for (std::size_t j = 0; j < n; ++j) {
          double a = std::abs(x[j]);
          double w = detail::coordinate_weight(space, j);
          if (a <= band) {
            out.face.indices.push_back(j);
            out.face.radii.push_back(w);
          } else {
            out.base.coefficients[j] = w * std::conj(x[j]) / a;
          }
        }
        out.is_singleton = out.face.indices.empty();
        if (out.is_singleton) out.face.kind = NormingFace::Kind::singleton;
        return out;
      }
      // p = inf: vertices over the argmax set
      double best = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        best = std::max(best, detail::coordinate_weight(space, j) * std::abs(x[j]));
      for (std::size_t j = 0; j < n; ++j) {
        double w = detail::coordinate_weight(space, j);
        if (w * std::abs(x[j]) >= best * (1.0 - 1e-12)) {
          out.face.indices.push_back(j);
          out.face.vertex_coeffs.push_back(w * std::conj(x[j]) / std::abs(x[j]));
        }
      }
      out.base.coefficients[out.face.indices.front()] = out.face.vertex_coeffs.front();
      out.is_singleton = out.face.indices.size() == 1;
      out.face.kind = out.is_singleton ? NormingFace::Kind::singleton : NormingFace::Kind::linf_simplex;
      return out;
    }
    case NormSpec::Kind::operator_norm:
      throw std::invalid_argument("norming_set: operator-norm spaces are not supported");
  }
  throw std::logic_error("norming_set: unreachable");
}

/// A direction mu and a unit functional u* with u*(x) = mu ||x|| and
/// Re u*(y) = 0.
struct OrthogonalityPair {
  Direction mu;
  Functional functional;
  double residual_action = 0.0;  // |u*(x) - mu ||x|||
  double residual_re_y = 0.0;    // |Re u*(y)|
  double residual_dual = 0.0;    // | ||u*||_* - 1 |
};

namespace detail {

/// Minimizes |Re(mu g(y))| over the norming face and returns the minimizer.
/// The faces are products of discs (l1) or a simplex (sup norm), so each
/// free coordinate admits an exact line search.
inline Functional face_search(const NormingSet& ns, const CVector& y, Complex mu) {
  Functional g = ns.base;
  switch (ns.face.kind) {
    case NormingFace::Kind::singleton:
      return g;
    case NormingFace::Kind::l1_discs: {
      double c0 = (mu * g(y)).real();
      double want = -c0;
      for (std::size_t k = 0; k < ns.face.indices.size(); ++k) {
        std::size_t j = ns.face.indices[k];
        double cap = ns.face.radii[k] * std::abs(y[j]);
        if (cap <= 0.0) continue;
        double s = std::clamp(want, -cap, cap);
        want -= s;
        // coefficient making Re(mu f_j y_j) equal s, with |f_j| = |s| / |y_j|
        g.coefficients[j] = s * std::conj(mu * y[j]) / (std::abs(y[j]) * std::abs(y[j]));
      }
      return g;
    }
    case NormingFace::Kind::linf_simplex: {
      const std::size_t nv = ns.face.indices.size();
      std::vector<double> c(nv);
      for (std::size_t k = 0; k < nv; ++k) {
        c[k] = (mu * ns.face.vertex_coeffs[k] * y[ns.face.indices[k]]).real();
      }
      std::size_t kmin = 0, kmax = 0;
      for (std::size_t k = 1; k < nv; ++k) {
        if (c[k] < c[kmin]) kmin = k;
        if (c[k] > c[kmax]) kmax = k;
      }
      for (std::size_t j : ns.face.indices) g.coefficients[j] = Complex(0.0, 0.0);
      if (c[kmin] <= 0.0 && 0.0 <= c[kmax] && kmin != kmax) {
        double t = c[kmax] / (c[kmax] - c[kmin]);
        g.coefficients[ns.face.indices[kmin]] += t * ns.face.vertex_coeffs[kmin];
        g.coefficients[ns.face.indices[kmax]] += (1.0 - t) * ns.face.vertex_coeffs[kmax];
      } else {
        std::size_t kbest = std::abs(c[kmin]) <= std::abs(c[kmax]) ? kmin : kmax;
        g.coefficients[ns.face.indices[kbest]] = ns.face.vertex_coeffs[kbest];
      }
      return g;
    }
  }
  return g;
}

}  // namespace detail

/// Constructive side of the functional characterization: when x is
/// mu-orthogonal to y this produces a functional witness from J_mu(x) with
/// Re u*(y) = 0; otherwise nothing. The decision is delegated to the
/// optimization predicate so both routes always agree.
inline std::optional<OrthogonalityPair> witness(const NormSpec& space, const CVector& x,
                                                const CVector& y, Direction mu,
                                                double tol = 1e-8) {
  double nx = norm(space, x);
  double ny = norm(space, y);
  if (nx <= 0.0 || ny <= 0.0) throw std::invalid_argument("witness: zero vector");
  if (!is_dir_orthogonal(space, x, y, mu, tol).orthogonal) return std::nullopt;

  NormingSet ns = norming_set(space, x);
  Functional g = detail::face_search(ns, y, mu.unit());
  OrthogonalityPair pair;
  pair.mu = mu;
  pair.functional.coefficients.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    pair.functional.coefficients[j] = mu.unit() * g.coefficients[j];
  }
  pair.residual_action = std::abs(pair.functional(x) - mu.unit() * nx);
  pair.residual_re_y = std::abs(pair.functional(y).real());
  pair.residual_dual = std::abs(dual_norm(space, pair.functional) - 1.0);
  return pair;
}

/// Samples orthogonality pairs across the direction set of (x, y). The
/// output is closed under (mu, u*) -> (-mu, -u*), so its cardinality is even
/// and at least 2.
inline std::vector<OrthogonalityPair> orthogonality_pairs_sample(const NormSpec& space,
                                                                 const CVector& x,
                                                                 const CVector& y,
                                                                 std::size_t n_directions,
                                                                 const DirectionSetOptions& opts = {}) {
  if (n_directions == 0) throw std::invalid_argument("orthogonality_pairs_sample: need n >= 1");
  ArcSet arcs = direction_set(space, x, y, opts);
  std::vector<double> angles;
  if (arcs.kind == ArcSet::Kind::full) {
    for (std::size_t k = 0; k < n_directions; ++k)
      angles.push_back(kPi * static_cast<double>(k) / static_cast<double>(n_directions));
  } else if (arcs.is_point_pair()) {
    angles.push_back(arcs.theta_start);
  } else if (n_directions == 1) {
    angles.push_back(0.5 * (arcs.theta_start + arcs.theta_end));
  } else {
    double step = (arcs.theta_end - arcs.theta_start) / static_cast<double>(n_directions - 1);
    for (std::size_t k = 0; k < n_directions; ++k)
      angles.push_back(arcs.theta_start + step * static_cast<double>(k));
  }

  std::vector<OrthogonalityPair> pairs;
  for (double th : angles) {
    Direction mu = Direction::from_angle(th);
    std::optional<OrthogonalityPair> w = witness(space, x, y, mu, opts.tol);
    if (!w) continue;
    OrthogonalityPair neg = *w;
    neg.mu = mu.antipode();
    for (Complex& z : neg.functional.coefficients) z = -z;
    pairs.push_back(std::move(*w));
    pairs.push_back(std::move(neg));
  }
  if (pairs.empty()) {
    throw StructuralViolation(
        "orthogonality_pairs_sample: no witness on a computed orthogonality direction");
  }
  return pairs;
}

}  // namespace bjortho
