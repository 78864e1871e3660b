#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bjortho/sampling.hpp"
#include "bjortho/types.hpp"

namespace bjortho {

inline constexpr double kInfiniteExponent = std::numeric_limits<double>::infinity();

/// Description of a finite-dimensional complex norm. The supported families
/// are l_p (1 <= p <= inf), weighted l_p with strictly positive weights,
/// the Hilbert (Euclidean) norm, and induced operator norms between two such
/// spaces (vectors are then row-major matrices).
class NormSpec {
 public:
  enum class Kind { lp, weighted_lp, hilbert, operator_norm };

  static NormSpec lp(double p, std::size_t dim) {
    validate_exponent(p);
    NormSpec s(Kind::lp, dim);
    s.p_ = p;
    return s;
  }

  static NormSpec lp_inf(std::size_t dim) { return lp(kInfiniteExponent, dim); }

  static NormSpec weighted_lp(double p, std::vector<double> weights) {
    validate_exponent(p);
    if (weights.empty()) throw std::invalid_argument("weighted_lp: empty weight list");
    for (double w : weights) {
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw std::invalid_argument("weighted_lp: weights must be strictly positive and finite");
      }
    }
    NormSpec s(Kind::weighted_lp, weights.size());
    s.p_ = p;
    s.weights_ = std::move(weights);
    return s;
  }

  static NormSpec hilbert(std::size_t dim) { return NormSpec(Kind::hilbert, dim); }

  /// Induced norm on matrices mapping (domain, ||.||_dom) -> (codomain, ||.||_cod).
  static NormSpec operator_norm(const NormSpec& domain, const NormSpec& codomain) {
    NormSpec s(Kind::operator_norm, domain.dim() * codomain.dim());
    s.domain_ = std::make_shared<NormSpec>(domain);
    s.codomain_ = std::make_shared<NormSpec>(codomain);
    return s;
  }

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  bool p_is_inf() const { return std::isinf(p_); }
  std::size_t dim() const { return dim_; }
  const std::vector<double>& weights() const { return weights_; }

  const NormSpec& domain() const { return *domain_; }
  const NormSpec& codomain() const { return *codomain_; }
  std::size_t rows() const { return codomain_->dim(); }
  std::size_t cols() const { return domain_->dim(); }

  /// True for families whose every non-zero point is smooth.
  bool smooth_family() const {
    switch (kind_) {
      case Kind::hilbert:
        return true;
      case Kind::lp:
      case Kind::weighted_lp:
        return p_ > 1.0 && !p_is_inf();
      case Kind::operator_norm:
        return false;
    }
    return false;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::lp:
        return p_is_inf() ? "lp(inf)" : "lp(" + std::to_string(p_) + ")";
      case Kind::weighted_lp:
        return p_is_inf() ? "weighted_lp(inf)" : "weighted_lp(" + std::to_string(p_) + ")";
      case Kind::hilbert:
        return "hilbert";
      case Kind::operator_norm:
        return "operator_norm(" + domain_->describe() + " -> " + codomain_->describe() + ")";
    }
    return "?";
  }

 private:
  NormSpec(Kind k, std::size_t dim) : kind_(k), dim_(dim) {
    if (dim == 0) throw std::invalid_argument("NormSpec: dimension must be >= 1");
  }

  static void validate_exponent(double p) {
    if (std::isinf(p)) return;
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw std::invalid_argument("lp exponent must satisfy p >= 1 (or be infinity)");
    }
  }

  Kind kind_;
  std::size_t dim_;
  double p_ = 2.0;
  std::vector<double> weights_;
  std::shared_ptr<const NormSpec> domain_;
  std::shared_ptr<const NormSpec> codomain_;
};

/// <x, y> = sum_j x_j * conj(y_j): linear in the first slot, conjugate-linear
/// in the second.
inline Complex inner(const CVector& x, const CVector& y) {
  require_same_dim(x, y);
  Complex s(0.0, 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * std::conj(y[j]);
  return s;
}

/// A bounded linear functional represented by its coefficient vector. The
/// pairing is bilinear: f(z) = sum_j f_j z_j, with no conjugation.
struct Functional {
  CVector coefficients;

  Complex operator()(const CVector& z) const {
    require_same_dim(coefficients, z);
    Complex s(0.0, 0.0);
    for (std::size_t j = 0; j < z.size(); ++j) s += coefficients[j] * z[j];
    return s;
  }
};

double norm(const NormSpec& space, const CVector& x);

namespace detail {

inline double lp_moduli_norm(const CVector& x, double p, const std::vector<double>* weights) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      double a = std::abs(x[j]);
      if (weights) a *= (*weights)[j];
      m = std::max(m, a);
    }
    return m;
  }
  // scale out the largest modulus so pow() stays well conditioned
  double scale = 0.0;
  for (const Complex& z : x) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double a = std::abs(x[j]) / scale;
    double term = (p == 1.0) ? a : ((p == 2.0) ? a * a : std::pow(a, p));
    if (weights) term *= (*weights)[j];
    s += term;
  }
  return scale * ((p == 1.0) ? s : ((p == 2.0) ? std::sqrt(s) : std::pow(s, 1.0 / p)));
}

}  // namespace detail

/// A matrix together with the norms on its domain and codomain.
struct LinearOperator {
  std::size_t rows = 0;
  std::size_t cols = 0;
  CVector entries;  // row-major
  NormSpec domain;
  NormSpec codomain;

  LinearOperator(std::size_t r, std::size_t c, CVector e, NormSpec dom, NormSpec cod)
      : rows(r), cols(c), entries(std::move(e)), domain(std::move(dom)), codomain(std::move(cod)) {
    if (entries.size() != rows * cols) {
      throw std::invalid_argument("LinearOperator: entry count does not match rows*cols");
    }
    if (domain.dim() != cols || codomain.dim() != rows) {
      throw std::invalid_argument("LinearOperator: norm dimensions do not match the matrix shape");
    }
    require_finite(entries, "operator entries");
  }

  static LinearOperator hilbert_map(std::size_t r, std::size_t c, CVector e) {
    return LinearOperator(r, c, std::move(e), NormSpec::hilbert(c), NormSpec::hilbert(r));
  }

  static LinearOperator hilbert_map(std::size_t n, CVector e) {
    return hilbert_map(n, n, std::move(e));
  }

  bool hilbert_to_hilbert() const {
    return domain.kind() == NormSpec::Kind::hilbert && codomain.kind() == NormSpec::Kind::hilbert;
  }

  Complex at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

  void apply(const CVector& in, CVector& out) const {
    if (in.size() != cols) throw std::invalid_argument("operator/vector dimension mismatch");
    out.assign(rows, Complex(0.0, 0.0));
    for (std::size_t r = 0; r < rows; ++r) {
      Complex s(0.0, 0.0);
      const Complex* row = entries.data() + r * cols;
      for (std::size_t c = 0; c < cols; ++c) s += row[c] * in[c];
      out[r] = s;
    }
  }

  CVector apply(const CVector& in) const {
    CVector out;
    apply(in, out);
    return out;
  }

  CVector column(std::size_t c) const {
    CVector col(rows);
    for (std::size_t r = 0; r < rows; ++r) col[r] = at(r, c);
    return col;
  }
};

namespace detail {

inline Eigen::MatrixXcd to_eigen(const LinearOperator& T) {
  Eigen::MatrixXcd M(static_cast<Eigen::Index>(T.rows), static_cast<Eigen::Index>(T.cols));
  for (std::size_t r = 0; r < T.rows; ++r)
    for (std::size_t c = 0; c < T.cols; ++c) M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = T.at(r, c);
  return M;
}

inline CVector from_eigen_col(const Eigen::MatrixXcd& M, Eigen::Index c) {
  CVector v(static_cast<std::size_t>(M.rows()));
  for (Eigen::Index r = 0; r < M.rows(); ++r) v[static_cast<std::size_t>(r)] = M(r, c);
  return v;
}

inline bool l1_family(const NormSpec& s) {
  return (s.kind() == NormSpec::Kind::lp || s.kind() == NormSpec::Kind::weighted_lp) && s.p() == 1.0;
}

inline bool plain_linf(const NormSpec& s) {
  return s.kind() == NormSpec::Kind::lp && s.p_is_inf();
}

inline double coordinate_weight(const NormSpec& s, std::size_t j) {
  return s.kind() == NormSpec::Kind::weighted_lp ? s.weights()[j] : 1.0;
}

}  // namespace detail

struct OperatorNormResult {
  double value = 0.0;
  /// True when the value comes from an exact route (SVD or a closed form);
  /// otherwise it is a multistart lower bound.
  bool certified = false;
  int restarts = 0;
  double last_step = 0.0;
};

/// Induced operator norm. Exact for Hilbert -> Hilbert (largest singular
/// value), for l1-type domains (maximum over scaled columns) and for
/// lp(inf) -> lp(inf) (maximum row sum). Everything else falls back to a
/// multistart projected ascent over the domain unit sphere and is reported
/// as a certified lower bound only.
inline OperatorNormResult operator_norm(const LinearOperator& T, unsigned n_starts = 32,
                                        std::uint64_t seed = 0x5eed5eedULL) {
  OperatorNormResult out;

  if (T.hilbert_to_hilbert()) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(T));
    out.value = (svd.singularValues().size() > 0) ? svd.singularValues()(0) : 0.0;
    out.certified = true;
    return out;
  }

  if (detail::l1_family(T.domain)) {
    // extreme points of the (weighted) l1 ball are unimodular multiples of
    // e_j / w_j, so the supremum is a maximum over scaled columns
    double best = 0.0;
    for (std::size_t c = 0; c < T.cols; ++c) {
      best = std::max(best, norm(T.codomain, T.column(c)) / detail::coordinate_weight(T.domain, c));
    }
    out.value = best;
    out.certified = true;
    return out;
  }

  if (detail::plain_linf(T.domain) && detail::plain_linf(T.codomain)) {
    double best = 0.0;
    for (std::size_t r = 0; r < T.rows; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < T.cols; ++c) s += std::abs(T.at(r, c));
      best = std::max(best, s);
    }
    out.value = best;
    out.certified = true;
    return out;
  }

  // multistart projected ascent (coordinate pattern search on the sphere)
  Rng rng(seed);
  const std::size_t n = T.cols;
  CVector work, image;
  auto value_at = [&](const CVector& v) {
    T.apply(v, image);
    return norm(T.codomain, image);
  };
  auto normalized = [&](CVector v) {
    double nv = norm(T.domain, v);
    if (nv <= 0.0) return v;
    for (Complex& z : v) z /= nv;
    return v;
  };

  std::vector<CVector> starts;
  for (std::size_t j = 0; j < n; ++j) {
    CVector e(n, Complex(0.0, 0.0));
    e[j] = Complex(1.0, 0.0);
    starts.push_back(normalized(std::move(e)));
  }
  for (unsigned s = 0; s < n_starts; ++s) starts.push_back(normalized(rng.unit_vector(n)));

  double best = 0.0;
  double final_step = 0.0;
  for (CVector x : starts) {
    double fx = value_at(x);
    double step = 0.5;
    while (step > 1e-9) {
      bool improved = false;
      for (std::size_t j = 0; j < n; ++j) {
        for (Complex d : {Complex(step, 0.0), Complex(-step, 0.0), Complex(0.0, step), Complex(0.0, -step)}) {
          work = x;
          work[j] += d;
          work = normalized(std::move(work));
          double fw = value_at(work);
          if (fw > fx * (1.0 + 1e-15) + 1e-300) {
            x = work;
            fx = fw;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (fx > best) best = fx;
    final_step = step;
  }
  out.value = best;
  out.certified = false;
  out.restarts = static_cast<int>(starts.size());
  out.last_step = final_step;
  return out;
}

/// Norm of x in the given space. For operator-norm spaces x is read as a
/// row-major matrix.
inline double norm(const NormSpec& space, const CVector& x) {
  if (x.size() != space.dim()) {
    throw std::invalid_argument("norm: vector dimension " + std::to_string(x.size()) +
                                " does not match space dimension " + std::to_string(space.dim()));
  }
  require_finite(x, "vector");
  switch (space.kind()) {
    case NormSpec::Kind::lp:
      return detail::lp_moduli_norm(x, space.p(), nullptr);
    case NormSpec::Kind::weighted_lp:
      return detail::lp_moduli_norm(x, space.p(), &space.weights());
    case NormSpec::Kind::hilbert:
      return detail::lp_moduli_norm(x, 2.0, nullptr);
    case NormSpec::Kind::operator_norm: {
      LinearOperator T(space.rows(), space.cols(), x, space.domain(), space.codomain());
      return operator_norm(T).value;
    }
  }
  throw std::logic_error("norm: unreachable");
}

/// Dual norm sup{ |f(z)| : ||z|| = 1 } under the bilinear pairing. Closed
/// forms exist for the lp / weighted lp / Hilbert families; operator-norm
/// duals are not supported.
inline double dual_norm(const NormSpec& space, const Functional& f) {
  const CVector& c = f.coefficients;
  if (c.size() != space.dim()) throw std::invalid_argument("dual_norm: dimension mismatch");
  require_finite(c, "functional");
  switch (space.kind()) {
    case NormSpec::Kind::hilbert:
      return detail::lp_moduli_norm(c, 2.0, nullptr);
    case NormSpec::Kind::lp: {
      double p = space.p();
      if (p == 1.0) return detail::lp_moduli_norm(c, kInfiniteExponent, nullptr);
      if (space.p_is_inf()) return detail::lp_moduli_norm(c, 1.0, nullptr);
      return detail::lp_moduli_norm(c, p / (p - 1.0), nullptr);
    }
    case NormSpec::Kind::weighted_lp: {
      double p = space.p();
      const std::vector<double>& w = space.weights();
      if (p == 1.0) {
        double m = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) m = std::max(m, std::abs(c[j]) / w[j]);
        return m;
      }
      if (space.p_is_inf()) {
        double s = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) s += std::abs(c[j]) / w[j];
        return s;
      }
      double q = p / (p - 1.0);
      // dual of (sum w |z|^p)^(1/p) is (sum w^(1-q) |f|^q)^(1/q)
      std::vector<double> dual_w(c.size());
      for (std::size_t j = 0; j < c.size(); ++j) dual_w[j] = std::pow(w[j], 1.0 - q);
      return detail::lp_moduli_norm(c, q, &dual_w);
    }
    case NormSpec::Kind::operator_norm:
      throw std::invalid_argument("dual_norm: operator-norm spaces are not supported");
  }
  throw std::logic_error("dual_norm: unreachable");
}

/// Where an operator attains its norm. In the Hilbert case this is the unit
/// sphere of the span of the top right-singular vectors. Otherwise it is a
/// best-effort list of sampled unit maximizers.
struct NormAttainmentSet {
  enum class Kind { hilbert_subspace, sampled_points };
  Kind kind = Kind::sampled_points;
  std::vector<CVector> vectors;    // orthonormal basis of H0, or unit samples
  std::vector<double> residuals;   // sampled case: relative norm deficiency
  double operator_norm_value = 0.0;
};

inline NormAttainmentSet norm_attainment_set(const LinearOperator& T,
                                             double sigma_rel_tol = 1e-9,
                                             unsigned n_starts = 32,
                                             std::uint64_t seed = 0x5eed5eedULL,
                                             double keep_rel_tol = 1e-8) {
  NormAttainmentSet out;
  if (T.hilbert_to_hilbert()) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(T), Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    double smax = sigma.size() > 0 ? sigma(0) : 0.0;
    out.kind = NormAttainmentSet::Kind::hilbert_subspace;
    out.operator_norm_value = smax;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      // a singular value counts as maximal within a fixed relative band so
      // that the subspace is deterministic under floating point
      if (sigma(i) >= smax * (1.0 - sigma_rel_tol)) {
        out.vectors.push_back(detail::from_eigen_col(svd.matrixV(), i));
      }
    }
    return out;
  }

  // general case: keep distinct ascent endpoints that come close to the norm
  OperatorNormResult on = operator_norm(T, n_starts, seed);
  out.kind = NormAttainmentSet::Kind::sampled_points;
  out.operator_norm_value = on.value;
  Rng rng(seed + 1);
  CVector image;
  auto value_at = [&](const CVector& v) {
    T.apply(const_cast<CVector&>(v), image);
    return norm(T.codomain, image);
  };
  auto canonical_phase = [](CVector v) {
    for (const Complex& z : v) {
      if (std::abs(z) > 1e-12) {
        Complex ph = std::conj(z) / std::abs(z);
        for (Complex& w : v) w *= ph;
        break;
      }
    }
    return v;
  };
  for (unsigned s = 0; s < n_starts + static_cast<unsigned>(T.cols); ++s) {
    CVector x = s < T.cols ? CVector(T.cols, Complex(0.0, 0.0)) : rng.unit_vector(T.cols);
    if (s < T.cols) x[s] = Complex(1.0, 0.0);
    double nx = norm(T.domain, x);
    if (nx <= 0.0) continue;
    for (Complex& z : x) z /= nx;
    // short ascent from this start
    double fx = value_at(x);
    double step = 0.25;
    while (step > 1e-8) {
      bool improved = false;
      for (std::size_t j = 0; j < T.cols; ++j) {
        for (Complex d : {Complex(step, 0.0), Complex(-step, 0.0), Complex(0.0, step), Complex(0.0, -step)}) {
          CVector cand = x;
          cand[j] += d;
          double nc = norm(T.domain, cand);
          if (nc <= 0.0) continue;
          for (Complex& z : cand) z /= nc;
          double fc = value_at(cand);
          if (fc > fx * (1.0 + 1e-15)) {
            x = std::move(cand);
            fx = fc;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (fx >= on.value * (1.0 - keep_rel_tol)) {
      CVector c = canonical_phase(x);
      bool dup = false;
      for (const CVector& v : out.vectors) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) d2 += std::norm(v[j] - c[j]);
        if (d2 < 1e-10) {
          dup = true;
          break;
        }
      }
      if (!dup) {
        out.vectors.push_back(std::move(c));
        out.residuals.push_back(on.value > 0.0 ? (on.value - fx) / on.value : 0.0);
      }
    }
  }
  return out;
}

}  // namespace bjortho
