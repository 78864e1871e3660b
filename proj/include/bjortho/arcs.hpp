#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bjortho/orthogonality.hpp"
#include "bjortho/types.hpp"

namespace bjortho {

/// The set S = { gamma in S^1 : x is gamma-orthogonal to y }. Either the
/// whole circle, or one closed arc E (its antipode -E is implied). A
/// degenerate arc with theta_start == theta_end encodes an antipodal point
/// pair. Canonical form keeps theta_start in [0, pi) and the length in
/// [0, pi).
struct ArcSet {
  enum class Kind { full, antipodal_arcs };

  Kind kind = Kind::full;
  double theta_start = 0.0;
  double theta_end = 0.0;
  bool degenerate_input = false;

  static ArcSet full(bool degenerate = false) {
    ArcSet a;
    a.kind = Kind::full;
    a.degenerate_input = degenerate;
    return a;
  }

  /// Arc from `start` counterclockwise to `end`; the length must be < pi.
  static ArcSet arcs(double start, double end) {
    double len = wrap_angle_2pi(end - start);
    if (len >= kPi) {
      if (len > kTwoPi - 1e-9) {
        len = 0.0;  // wrapped-around noise on a degenerate pair
      } else {
        throw std::invalid_argument("ArcSet: arc length must be < pi");
      }
    }
    ArcSet a;
    a.kind = Kind::antipodal_arcs;
    a.theta_start = wrap_angle_pi(start);
    a.theta_end = a.theta_start + len;
    return a;
  }

  bool is_point_pair() const {
    return kind == Kind::antipodal_arcs && theta_end == theta_start;
  }

  double length() const {
    return kind == Kind::full ? kTwoPi : theta_end - theta_start;
  }
};

/// Closed-interval membership modulo the antipodal identification.
inline bool arc_membership(const ArcSet& arcs, Direction gamma) {
  if (arcs.kind == ArcSet::Kind::full) return true;
  constexpr double eps = 1e-12;
  double delta = wrap_angle_pi(gamma.theta - arcs.theta_start);
  double len = arcs.theta_end - arcs.theta_start;
  return delta <= len + eps || delta >= kPi - eps;
}

/// Directions gamma with Re(lambda gamma) = 0, i.e. the orthogonality set of
/// (x, lambda x): the antipodal pair at theta = pi/2 - arg(lambda) (mod pi).
inline ArcSet scalar_multiple_directions(Complex lambda) {
  if (std::abs(lambda) == 0.0) return ArcSet::full(/*degenerate=*/true);
  double theta = wrap_angle_pi(kHalfPi - std::arg(lambda));
  return ArcSet::arcs(theta, theta);
}

/// The half-circle U_beta = { gamma : arg gamma in [arg beta, pi + arg beta] }.
struct HalfCircle {
  Direction beta;

  bool contains(Direction gamma) const {
    constexpr double eps = 1e-12;
    double delta = wrap_angle_2pi(gamma.theta - beta.theta);
    return delta <= kPi + eps || delta >= kTwoPi - eps;
  }

  HalfCircle negated() const { return HalfCircle{beta.antipode()}; }
};

struct DirectionSetOptions {
  std::size_t resolution = 720;
  double tol = 1e-8;                  // predicate tolerance (relative)
  double angular_tol = 1e-8;          // target accuracy of arc endpoints
  double degenerate_threshold = 2e-7; // arcs shorter than this collapse to a pair
  bool collinear_fast_path = true;    // route y = lambda x to the closed form
  int max_refinements = 2;            // scan resolution escalations (x4 each)
  double derivative_step = 3e-8;      // finite-difference step for the polish
  double pair_polish_step = 1e-6;     // central-difference step for pair location
  double gap_threshold = 1e-6;        // subdifferential gap separating arcs from pairs
};

namespace detail {

struct ScanBlock {
  PartClassification cls;
  std::size_t start = 0;  // sample index
  std::size_t count = 0;
};

inline std::vector<ScanBlock> cyclic_blocks(const std::vector<PartClassification>& c) {
  std::vector<ScanBlock> blocks;
  const std::size_t m = c.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (blocks.empty() || blocks.back().cls != c[k]) {
      blocks.push_back({c[k], k, 1});
    } else {
      ++blocks.back().count;
    }
  }
  if (blocks.size() > 1 && blocks.front().cls == blocks.back().cls) {
    blocks.front().start = blocks.back().start;  // merged block wraps past 2*pi
    blocks.front().count += blocks.back().count;
    blocks.pop_back();
  }
  return blocks;
}

/// Refines one arc endpoint inside the scan edge [theta_lo, theta_hi]. The
/// classification flips across the true endpoint, but thresholded one-sided
/// minima fatten the transition by O(sqrt(tol)); the sign of the matching
/// one-sided derivative flips sharply, so bisection runs on that sign. The
/// derivative side is picked by the adjacent one-sided region: a plus_only
/// neighbour means the left derivative vanishes at the endpoint, a
/// minus_only neighbour the right derivative.
class EndpointPolisher {
 public:
  EndpointPolisher(const NormSpec& space, const CVector& x_unit, const CVector& y_unit,
                   const DirectionSetOptions& opts)
      : space_(space), x_(x_unit), y_(y_unit), opts_(opts) {}

  double derivative(double theta, int side) const {
    return one_sided_derivative(space_, x_, y_, Direction::from_angle(theta).unit(), side,
                                opts_.derivative_step);
  }

  /// Width of the subdifferential of t -> ||x + t gamma y|| at t = 0. Zero
  /// (up to finite-difference bias) at smooth points, strictly positive in
  /// the interior of a genuine arc.
  double subdifferential_gap(double theta) const {
    return derivative(theta, +1) - derivative(theta, -1);
  }

  /// Symmetric-difference derivative; unbiased at smooth points, so its sign
  /// change pins a point pair down to the noise floor.
  double central_derivative(double theta) const {
    Complex g = Direction::from_angle(theta).unit();
    LineFunction phi(space_, x_, scaled_direction(y_, g));
    const double h = opts_.pair_polish_step;
    return (phi(h) - phi(-h)) / (2.0 * h);
  }

  std::optional<double> central_zero(double lo, double hi) const {
    auto f = [&](double th) { return central_derivative(th); };
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
    double z = bisect_sign_change(f, lo, hi, 1e-11);
    if (std::isnan(z)) return std::nullopt;
    return z;
  }

  /// `side_class` is the classification of the non-`both` region adjacent to
  /// the endpoint being refined. `step` is the scan step, used when a
  /// bracket end sits inside the fattened transition band and must be moved.
  std::optional<double> refine(double theta_lo, double theta_hi,
                               PartClassification side_class, double step) const {
    const int side = side_class == PartClassification::plus_only ? -1 : +1;
    double lo = theta_lo, hi = theta_hi;
    double flo = derivative(lo, side);
    double fhi = derivative(hi, side);
    for (int k = 0; k < 3 && flo != 0.0 && fhi != 0.0 && (flo > 0.0) == (fhi > 0.0); ++k) {
      lo -= step;
      flo = derivative(lo, side);
      if ((flo > 0.0) != (fhi > 0.0)) break;
      hi += step;
      fhi = derivative(hi, side);
    }
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
    double z = bisect_sign_change([&](double th) { return derivative(th, side); }, lo, hi,
                                  0.1 * opts_.angular_tol);
    if (std::isnan(z)) return std::nullopt;
    return z;
  }

 private:
  const NormSpec& space_;
  const CVector& x_;
  const CVector& y_;
  const DirectionSetOptions& opts_;
};

inline int classification_code(PartClassification c) {
  switch (c) {
    case PartClassification::both: return 0;
    case PartClassification::plus_only: return 1;
    case PartClassification::minus_only: return -1;
  }
  return -2;
}

inline std::vector<StructuralViolation::Sample> violation_samples(
    const std::vector<double>& thetas, const std::vector<PartClassification>& cls) {
  std::vector<StructuralViolation::Sample> s;
  s.reserve(thetas.size());
  for (std::size_t k = 0; k < thetas.size(); ++k) s.push_back({thetas[k], classification_code(cls[k])});
  return s;
}

}  // namespace detail

/// Computes the full set of orthogonality directions for (x, y). Returns the
/// whole circle when x is Birkhoff-James orthogonal to y, otherwise the
/// guaranteed two-antipodal-arc structure, located by a part-sign scan and
/// refined by bisection. A scan that cannot be reconciled with that
/// structure, after resolution escalation, raises StructuralViolation.
inline ArcSet direction_set(const NormSpec& space, const CVector& x, const CVector& y,
                            const DirectionSetOptions& opts = {}) {
  if (opts.resolution < 16) throw std::invalid_argument("direction_set: resolution too small");
  detail::UnitPair pair = detail::normalize_pair(space, x, y);
  if (pair.degenerate) return ArcSet::full(/*degenerate=*/true);

  if (opts.collinear_fast_path) {
    // y = lambda x has the exact closed-form answer
    Complex denom = inner(pair.x, pair.x);
    Complex lam = inner(pair.y, pair.x) / denom;
    double res2 = 0.0;
    for (std::size_t j = 0; j < pair.x.size(); ++j) res2 += std::norm(pair.y[j] - lam * pair.x[j]);
    if (res2 <= 1e-24 && std::abs(lam) > 0.0) return scalar_multiple_directions(lam);
  }

  if (is_bj_orthogonal(space, pair.x, pair.y, opts.tol).orthogonal) return ArcSet::full();

  detail::EndpointPolisher polisher(space, pair.x, pair.y, opts);

  auto classify = [&](double theta) {
    return detail::part_sign_detail(space, pair.x, pair.y, Direction::from_angle(theta), opts.tol).value;
  };

  std::size_t m = opts.resolution;
  std::vector<double> thetas;
  std::vector<PartClassification> cls;

  for (int attempt = 0; attempt <= opts.max_refinements; ++attempt, m *= 4) {
    const double step = kTwoPi / static_cast<double>(m);
    thetas.resize(m);
    cls.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      thetas[k] = step * static_cast<double>(k);
      cls[k] = classify(thetas[k]);
    }
    std::vector<detail::ScanBlock> blocks = detail::cyclic_blocks(cls);

    auto angle_at = [&](std::ptrdiff_t idx) { return step * static_cast<double>(idx); };

    // endpoints per arc copy: (a_i, b_i); the two copies must be antipodal
    std::vector<std::pair<double, double>> found;

    auto fallback_boundary = [&](double th_in, double th_out) {
      // classification bisection; returns the last angle classified `both`
      double lo = th_in, hi = th_out;
      bool in_lo = classify(lo) == PartClassification::both;
      for (int i = 0; i < 64 && std::abs(hi - lo) > opts.angular_tol; ++i) {
        double mid = 0.5 * (lo + hi);
        bool mid_in = classify(mid) == PartClassification::both;
        if (mid_in == in_lo) lo = mid;
        else hi = mid;
      }
      return lo;
    };

    bool pattern_ok = false;
    if (blocks.size() == 4 || blocks.size() == 2) {
      std::size_t n_both = 0, n_plus = 0, n_minus = 0;
      for (const auto& b : blocks) {
        if (b.cls == PartClassification::both) ++n_both;
        else if (b.cls == PartClassification::plus_only) ++n_plus;
        else ++n_minus;
      }
      if (blocks.size() == 4 && n_both == 2 && n_plus == 1 && n_minus == 1) {
        // generic arcs: refine the four both<->side edges
        pattern_ok = true;
        for (std::size_t bi = 0; bi < blocks.size() && pattern_ok; ++bi) {
          const auto& b = blocks[bi];
          if (b.cls != PartClassification::both) continue;
          const auto& before = blocks[(bi + blocks.size() - 1) % blocks.size()];
          const auto& after = blocks[(bi + 1) % blocks.size()];
          if (before.cls == after.cls) {
            pattern_ok = false;
            break;
          }
          std::ptrdiff_t first = static_cast<std::ptrdiff_t>(b.start);
          std::ptrdiff_t last = first + static_cast<std::ptrdiff_t>(b.count) - 1;
          double edge_a_lo = angle_at(first - 1), edge_a_hi = angle_at(first);
          double edge_b_lo = angle_at(last), edge_b_hi = angle_at(last + 1);
          std::optional<double> a = polisher.refine(edge_a_lo, edge_a_hi, before.cls, step);
          std::optional<double> bpt = polisher.refine(edge_b_lo, edge_b_hi, after.cls, step);
          double av = a ? *a : fallback_boundary(edge_a_hi, edge_a_lo);
          double bv = bpt ? *bpt : fallback_boundary(edge_b_lo, edge_b_hi);
          found.push_back({av, bv});
        }
      } else if (blocks.size() == 2 && n_both == 0 && n_plus == 1 && n_minus == 1) {
        // point pairs hiding between samples: both one-sided derivatives
        // cross zero inside each plus<->minus edge
        pattern_ok = true;
        for (std::size_t bi = 0; bi < blocks.size() && pattern_ok; ++bi) {
          const auto& b = blocks[bi];
          std::ptrdiff_t last = static_cast<std::ptrdiff_t>(b.start) + static_cast<std::ptrdiff_t>(b.count) - 1;
          double lo = angle_at(last), hi = angle_at(last + 1);
          // endpoint adjacent to the plus side is a left-derivative zero,
          // endpoint adjacent to the minus side a right-derivative zero
          std::optional<double> za = polisher.refine(lo, hi, PartClassification::plus_only, step);
          std::optional<double> zb = polisher.refine(lo, hi, PartClassification::minus_only, step);
          if (!za || !zb) {
            pattern_ok = false;
            break;
          }
          double av = *za, bv = *zb;
          if (b.cls == PartClassification::minus_only) std::swap(av, bv);
          if (av > bv) av = bv = 0.5 * (av + bv);
          found.push_back({av, bv});
        }
      }
    }

    if (pattern_ok && found.size() == 2) {
      // arcs whose midpoint shows no subdifferential gap are smooth-point
      // pairs; relocate them with the central difference, whose zero is far
      // sharper than the one-sided endpoints
      for (auto& ab : found) {
        double mid = 0.5 * (ab.first + ab.second);
        if (polisher.subdifferential_gap(mid) < opts.gap_threshold) {
          std::optional<double> z;
          double w = std::max(4.0 * (ab.second - ab.first), 1e-4);
          for (int e = 0; e < 4 && !z; ++e, w *= 4.0) {
            z = polisher.central_zero(mid - w, mid + w);
          }
          ab.first = ab.second = z ? *z : mid;
        }
      }
      // combine the two antipodal measurements
      double da = wrap_signed_half_pi(found[1].first - found[0].first);
      double db = wrap_signed_half_pi(found[1].second - found[0].second);
      if (std::abs(da) <= 1e-5 && std::abs(db) <= 1e-5) {
        double a = found[0].first + 0.5 * da;
        double b = found[0].second + 0.5 * db;
        double len = wrap_angle_2pi(b - a);
        if (len >= kPi && len > kTwoPi - 1e-6) len = 0.0;
        if (len < kPi) {
          if (len < opts.degenerate_threshold) {
            double mid = a + 0.5 * len;
            return ArcSet::arcs(mid, mid);
          }
          return ArcSet::arcs(a, a + len);
        }
      }
    }
    // otherwise escalate the scan resolution and retry
  }

  throw StructuralViolation(
      "direction_set: scan did not resolve into two antipodal arcs (resolution " +
          std::to_string(m / 4) + ")",
      detail::violation_samples(thetas, cls));
}

}  // namespace bjortho
