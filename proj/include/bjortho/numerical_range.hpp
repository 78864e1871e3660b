#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bjortho/orthogonality.hpp"
#include "bjortho/sampling.hpp"
#include "bjortho/spaces.hpp"

namespace bjortho {

namespace detail {

inline double l2norm(const CVector& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline void require_hilbert_square(const LinearOperator& T, const char* name) {
  if (!T.hilbert_to_hilbert() || T.rows != T.cols) {
    throw std::invalid_argument(std::string(name) + " must be a square Hilbert-space operator");
  }
}

inline CVector combine(const std::vector<CVector>& basis, const CVector& coeffs) {
  CVector x(basis.front().size(), Complex(0.0, 0.0));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += coeffs[k] * basis[k][j];
  }
  return x;
}

inline void require_orthonormal(const std::vector<CVector>& basis, double tol = 1e-8) {
  if (basis.empty()) throw std::invalid_argument("empty subspace basis");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      Complex g = inner(basis[i], basis[j]);
      double want = i == j ? 1.0 : 0.0;
      if (std::abs(g - want) > tol) {
        throw std::invalid_argument("subspace basis is not orthonormal (pair " +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

/// Checks ||Tv|| = c ||v|| on the basis and on random unit combinations and
/// returns c. Violations are reported with the offending vector.
inline double verify_isometry_multiple(const LinearOperator& T, const std::vector<CVector>& basis,
                                       double tol = 1e-8, std::uint64_t seed = 0x150317ULL) {
  require_orthonormal(basis);
  const double c = l2norm(T.apply(basis[0]));
  for (std::size_t k = 1; k < basis.size(); ++k) {
    double ck = l2norm(T.apply(basis[k]));
    if (std::abs(ck - c) > tol * (1.0 + c)) {
      throw std::invalid_argument("operator is not a scalar multiple of an isometry on the subspace: basis vector " +
                                  std::to_string(k) + " has ||Tv|| = " + std::to_string(ck) +
                                  ", expected " + std::to_string(c));
    }
  }
  Rng rng(seed);
  for (int trial = 0; trial < 8; ++trial) {
    CVector coeffs = rng.unit_vector(basis.size());
    CVector v = combine(basis, coeffs);
    double cv = l2norm(T.apply(v));
    if (std::abs(cv - c) > tol * (1.0 + c)) {
      throw std::invalid_argument(
          "operator is not a scalar multiple of an isometry on the subspace: random combination " +
          std::to_string(trial) + " has ||Tv|| = " + std::to_string(cv) + ", expected " +
          std::to_string(c));
    }
  }
  return c;
}

inline LinearOperator identity_operator(std::size_t n) {
  CVector e(n * n, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < n; ++j) e[j * n + j] = Complex(1.0, 0.0);
  return LinearOperator::hilbert_map(n, std::move(e));
}

}  // namespace detail

/// Sampled restricted numerical range W_A(T) = { <Ax, Tx> : x in S_H0 },
/// with the unit witnesses kept alongside each sampled point.
struct NumericalRangeSample {
  std::vector<Complex> points;
  std::vector<CVector> witnesses;
  double isometry_constant = 0.0;
};

inline NumericalRangeSample restricted_numerical_range(const LinearOperator& T,
                                                       const LinearOperator& A,
                                                       const std::vector<CVector>& h0_basis,
                                                       std::size_t n_samples,
                                                       std::uint64_t seed) {
  detail::require_hilbert_square(T, "T");
  detail::require_hilbert_square(A, "A");
  if (T.rows != A.rows) throw std::invalid_argument("T and A must act on the same space");
  NumericalRangeSample out;
  out.isometry_constant = detail::verify_isometry_multiple(T, h0_basis);

  auto push = [&](CVector x) {
    double nx = detail::l2norm(x);
    if (nx <= 0.0) return;
    for (Complex& z : x) z /= nx;
    out.points.push_back(inner(A.apply(x), T.apply(x)));
    out.witnesses.push_back(std::move(x));
  };

  const std::size_t k = h0_basis.size();
  for (std::size_t i = 0; i < k; ++i) push(h0_basis[i]);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      CVector mid(h0_basis[i].size());
      for (std::size_t t = 0; t < mid.size(); ++t) mid[t] = h0_basis[i][t] + h0_basis[j][t];
      push(std::move(mid));
    }
  }
  Rng rng(seed);
  for (std::size_t s = 0; s < n_samples; ++s) {
    push(detail::combine(h0_basis, rng.unit_vector(k)));
  }
  return out;
}

/// Constructive convexity data: the rotation kappa, the real coefficients
/// (a, b) of x0 = b kappa x1 + a x2, the translated operator P and the value
/// actually achieved.
struct WitnessSolution {
  Complex kappa{1.0, 0.0};
  double a = 0.0;
  double b = 0.0;
  CVector x0;
  CVector p_entries;           // matrix of P = gamma0 A + (sigma0 / c^2) T, row-major
  Complex gamma0{0.0, 0.0};
  Complex sigma0{0.0, 0.0};
  Complex n_post_rotation{0.0, 0.0};  // N after rotation; imaginary part ~ 0
  double re_inner_x1_x2 = 0.0;        // Re<kappa x1, x2>
  double target_lambda = 0.0;
  Complex target_value{0.0, 0.0};     // lambda mu1 + (1 - lambda) mu2
  Complex achieved_value{0.0, 0.0};   // <A x0, T x0>
  double isometry_constant = 0.0;
};

/// Produces a unit x0 with <A x0, T x0> = lambda mu1 + (1 - lambda) mu2,
/// where mu_i = <A x_i, T x_i>, by the translate/rotate/intersect route:
/// translate the range so the endpoints become 1 and 0, rotate x1 to make
/// the coupling term real, then solve the ellipse/hyperbola pair
///   a^2 + b^2 + 2 a b r = 1,    b^2 + a b N = lambda
/// through the quadratic in t = a / b.
inline WitnessSolution convexity_witness(const LinearOperator& T, const LinearOperator& A,
                                         const CVector& x1, const CVector& x2, double lambda) {
  detail::require_hilbert_square(T, "T");
  detail::require_hilbert_square(A, "A");
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must lie in [0, 1]");
  if (std::abs(detail::l2norm(x1) - 1.0) > 1e-8 || std::abs(detail::l2norm(x2) - 1.0) > 1e-8) {
    throw std::invalid_argument("x1 and x2 must be unit vectors");
  }

  WitnessSolution out;
  out.target_lambda = lambda;

  const Complex mu1 = inner(A.apply(x1), T.apply(x1));
  const Complex mu2 = inner(A.apply(x2), T.apply(x2));
  const double scale = std::abs(mu1) + std::abs(mu2) + 1.0;
  if (std::abs(mu1 - mu2) <= 1e-14 * scale) {
    throw std::invalid_argument("convexity_witness: <Ax1,Tx1> and <Ax2,Tx2> coincide");
  }
  out.target_value = lambda * mu1 + (1.0 - lambda) * mu2;

  const double c1 = detail::l2norm(T.apply(x1));
  const double c2 = detail::l2norm(T.apply(x2));
  if (std::abs(c1 - c2) > 1e-8 * (1.0 + c1)) {
    throw std::invalid_argument("convexity_witness: ||Tx1|| and ||Tx2|| differ; not an isometry multiple");
  }
  const double c = c1;
  if (c <= 0.0) throw std::invalid_argument("convexity_witness: T vanishes on the inputs");
  out.isometry_constant = c;

  out.gamma0 = 1.0 / (mu1 - mu2);
  out.sigma0 = -mu2 / (mu1 - mu2);

  const std::size_t n = T.rows;
  out.p_entries.resize(n * n);
  const Complex tfac = out.sigma0 / (c * c);
  for (std::size_t i = 0; i < n * n; ++i) {
    out.p_entries[i] = out.gamma0 * A.entries[i] + tfac * T.entries[i];
  }
  LinearOperator P(n, n, out.p_entries, NormSpec::hilbert(n), NormSpec::hilbert(n));

  const Complex p1 = inner(P.apply(x1), T.apply(x2));
  const Complex p2 = inner(P.apply(x2), T.apply(x1));
  const double im_n = (p1 + p2).imag();
  const double re_d = (p1 - p2).real();
  const double hyp = std::hypot(re_d, im_n);
  out.kappa = hyp > 0.0 ? Complex(re_d / hyp, -im_n / hyp) : Complex(1.0, 0.0);

  CVector x1r(n);
  for (std::size_t j = 0; j < n; ++j) x1r[j] = out.kappa * x1[j];
  out.n_post_rotation = out.kappa * p1 + std::conj(out.kappa) * p2;
  const double N = out.n_post_rotation.real();

  const double r = inner(x1r, x2).real();
  out.re_inner_x1_x2 = r;
  if (std::abs(r) >= 1.0) {
    throw std::invalid_argument("convexity_witness: |Re<x1,x2>| >= 1; inputs are not admissible");
  }

  double a = 0.0, b = 0.0;
  if (lambda <= 0.0) {
    a = 1.0;
    b = 0.0;
  } else if (lambda >= 1.0) {
    a = 0.0;
    b = 1.0;
  } else {
    // lambda t^2 + (2 lambda r - N) t + (lambda - 1) = 0 in t = a / b;
    // the root product (lambda - 1) / lambda < 0 keeps the discriminant
    // positive, and 1 + t N = lambda (1 + 2 t r + t^2) > 0 for every root
    const double Aq = lambda;
    const double Bq = 2.0 * lambda * r - N;
    const double Cq = lambda - 1.0;
    const double disc = Bq * Bq - 4.0 * Aq * Cq;  // = Bq^2 + 4 lambda (1 - lambda)
    if (!(disc > 0.0)) {
      throw std::logic_error("convexity_witness: the reduced quadratic lost its two real roots");
    }
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (Bq + (Bq >= 0.0 ? sq : -sq));
    double t1, t2;
    if (q != 0.0) {
      t1 = q / Aq;
      t2 = Cq / q;
    } else {
      t1 = sq / (2.0 * Aq);
      t2 = -t1;
    }
    const double m1 = std::abs(1.0 + t1 * N);
    const double m2 = std::abs(1.0 + t2 * N);
    double t = (m1 > m2 || (m1 == m2 && t1 >= t2)) ? t1 : t2;
    if (std::abs(1.0 + t * N) < 1e-14) t = (t == t1) ? t2 : t1;
    b = 1.0 / std::sqrt(1.0 + 2.0 * t * r + t * t);
    a = t * b;
  }
  out.a = a;
  out.b = b;

  out.x0.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.x0[j] = b * x1r[j] + a * x2[j];
  out.achieved_value = inner(A.apply(out.x0), T.apply(out.x0));
  return out;
}

/// Zero-membership certificate for W_A(T) on the given subspace.
struct ZeroMembershipResult {
  bool contains = false;
  std::optional<Direction> separating_direction;  // Re(conj(kappa) w) > 0 on W when separated
  std::optional<CVector> witness;                 // ambient unit vector with <Ax,Tx> ~ 0
  Complex witness_value{0.0, 0.0};
  double margin = 0.0;  // max over directions of min Re(e^{-i theta} W)
};

namespace detail {

struct CompressedRange {
  Eigen::MatrixXcd B;
  double scale = 0.0;
};

inline CompressedRange compress_range(const LinearOperator& T, const LinearOperator& A,
                                      const std::vector<CVector>& basis) {
  const std::size_t k = basis.size();
  CompressedRange out;
  out.B.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  std::vector<CVector> a_im(k), t_im(k);
  for (std::size_t j = 0; j < k; ++j) {
    a_im[j] = A.apply(basis[j]);
    t_im[j] = T.apply(basis[j]);
  }
  for (std::size_t row = 0; row < k; ++row) {
    for (std::size_t col = 0; col < k; ++col) {
      out.B(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          inner(a_im[col], t_im[row]);
    }
  }
  out.scale = out.B.norm() + 1e-300;
  return out;
}

inline Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& M) {
  return 0.5 * (M + M.adjoint());
}

struct SupportPoint {
  double lambda_min = 0.0;
  Eigen::VectorXcd eigvec;
  Complex value{0.0, 0.0};
};

inline SupportPoint support_point(const Eigen::MatrixXcd& B, double theta) {
  Eigen::MatrixXcd H = hermitian_part(Complex(std::cos(theta), -std::sin(theta)) * B);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  SupportPoint sp;
  sp.lambda_min = es.eigenvalues()(0);
  sp.eigvec = es.eigenvectors().col(0);
  sp.value = (sp.eigvec.adjoint() * B * sp.eigvec)(0, 0);
  return sp;
}

inline bool cholesky_positive_definite(const Eigen::MatrixXcd& H) {
  Eigen::LLT<Eigen::MatrixXcd> llt(H);
  return llt.info() == Eigen::Success;
}

inline CVector eigen_to_cvector(const Eigen::VectorXcd& v) {
  CVector out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i);
  return out;
}

}  // namespace detail

/// Decides 0 in W_A(T) over span(h0_basis). The quadratic form is compressed
/// to a k x k matrix B; a direction theta separates exactly when the
/// Hermitian part of e^{-i theta} B is positive definite, so a single
/// Cholesky success certifies 0 outside the range, and exhaustive failure
/// (the refined support margin staying <= 0) certifies membership, in which
/// case a unit witness with <Ax, Tx> ~ 0 is built by chaining convexity
/// witnesses toward the minimum-norm point of W(B).
inline ZeroMembershipResult contains_zero(const LinearOperator& T, const LinearOperator& A,
                                          const std::vector<CVector>& h0_basis,
                                          std::size_t resolution = 720) {
  detail::require_hilbert_square(T, "T");
  detail::require_hilbert_square(A, "A");
  detail::verify_isometry_multiple(T, h0_basis);

  detail::CompressedRange cr = detail::compress_range(T, A, h0_basis);
  const std::size_t k = h0_basis.size();
  ZeroMembershipResult out;

  // entries of B are <A v, T v'> and carry rounding noise on the scale of
  // ||A|| ||T||; a separation margin below that floor is not a certificate
  double frob_t = 0.0, frob_a = 0.0;
  for (const Complex& z : T.entries) frob_t += std::norm(z);
  for (const Complex& z : A.entries) frob_a += std::norm(z);
  const double noise_floor = std::sqrt(frob_t) * std::sqrt(frob_a) + 1e-300;

  double best_lambda = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  const double step = kTwoPi / static_cast<double>(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    double theta = step * static_cast<double>(i);
    double lm = detail::support_point(cr.B, theta).lambda_min;
    if (lm > best_lambda) {
      best_lambda = lm;
      best_theta = theta;
    }
  }
  ScalarMinResult ref = golden_section_min(
      [&](double th) { return -detail::support_point(cr.B, th).lambda_min; },
      best_theta - step, best_theta + step, 1e-10);
  if (-ref.value > best_lambda) {
    best_lambda = -ref.value;
    best_theta = ref.x;
  }
  out.margin = best_lambda;

  const double pd_eps = 1e-12 * std::max(cr.scale, noise_floor);
  if (best_lambda > pd_eps &&
      detail::cholesky_positive_definite(detail::hermitian_part(
          Complex(std::cos(best_theta), -std::sin(best_theta)) * cr.B))) {
    out.contains = false;
    out.separating_direction = Direction::from_angle(best_theta);
    return out;
  }

  out.contains = true;

  // Gilbert-style descent to the minimum-norm point of W(B); each step stays
  // inside the range by construction, so the coefficient vector tracks a
  // genuine unit witness throughout.
  detail::SupportPoint sp0 = detail::support_point(cr.B, 0.0);
  CVector coef = detail::eigen_to_cvector(sp0.eigvec);
  LinearOperator Bop(k, k,
                     [&] {
                       CVector e(k * k);
                       for (std::size_t r = 0; r < k; ++r)
                         for (std::size_t c = 0; c < k; ++c)
                           e[r * k + c] = cr.B(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
                       return e;
                     }(),
                     NormSpec::hilbert(k), NormSpec::hilbert(k));
  LinearOperator Ik = detail::identity_operator(k);
  auto quad = [&](const CVector& cvec) { return inner(Bop.apply(cvec), cvec); };

  Complex v = quad(coef);
  const double stop = 1e-10 * (1.0 + cr.scale);
  for (int iter = 0; iter < 400 && std::abs(v) > stop; ++iter) {
    detail::SupportPoint sp = detail::support_point(cr.B, std::arg(v));
    Complex z = sp.value;
    Complex dv = v - z;
    if (std::abs(dv) <= 1e-15 * cr.scale) break;
    double eta = std::clamp((std::conj(dv) * v).real() / std::norm(dv), 0.0, 1.0);
    if (eta <= 0.0) break;
    if (eta >= 1.0) {
      coef = detail::eigen_to_cvector(sp.eigvec);
    } else {
      CVector znew = detail::eigen_to_cvector(sp.eigvec);
      if (std::abs(v - z) <= 1e-14 * cr.scale) break;
      WitnessSolution ws = convexity_witness(Ik, Bop, coef, znew, 1.0 - eta);
      coef = ws.x0;
      double nc = detail::l2norm(coef);
      if (nc > 0.0)
        for (Complex& zc : coef) zc /= nc;
    }
    v = quad(coef);
  }

  CVector ambient = detail::combine(h0_basis, coef);
  double na = detail::l2norm(ambient);
  if (na > 0.0)
    for (Complex& z : ambient) z /= na;
  out.witness = ambient;
  out.witness_value = inner(A.apply(ambient), T.apply(ambient));
  return out;
}

/// Both routes of the operator-orthogonality theorem: the operator-norm
/// definition (plane minimization of the largest singular value) and the
/// numerical-range route over the norm attainment set. The two verdicts must
/// agree; a mismatch is surfaced as a StructuralViolation.
struct BhatiaSemrlResult {
  bool via_operator_norm = false;
  bool via_numerical_range = false;
  std::optional<CVector> witness;      // x in M_T with <Tx, Ax> ~ 0
  Complex witness_inner_product{0.0, 0.0};  // <Tx, Ax>
  double min_plane_value = 0.0;
  double operator_norm_value = 0.0;
  double range_margin = 0.0;
};

inline BhatiaSemrlResult bhatia_semrl_check(const LinearOperator& T, const LinearOperator& A,
                                            double tol = 1e-7) {
  detail::require_hilbert_square(T, "T");
  detail::require_hilbert_square(A, "A");
  if (T.rows != A.rows) throw std::invalid_argument("T and A must act on the same space");

  BhatiaSemrlResult out;
  NormSpec op_space = NormSpec::operator_norm(NormSpec::hilbert(T.cols), NormSpec::hilbert(T.rows));
  OrthogonalityVerdict v = is_bj_orthogonal(op_space, T.entries, A.entries, tol);
  out.via_operator_norm = v.orthogonal;
  out.min_plane_value = v.min_value;
  out.operator_norm_value = v.reference_norm;

  NormAttainmentSet att = norm_attainment_set(T);
  ZeroMembershipResult zr = contains_zero(T, A, att.vectors);
  out.via_numerical_range = zr.contains;
  out.range_margin = zr.margin;

  if (out.via_operator_norm != out.via_numerical_range) {
    throw StructuralViolation(
        "bhatia_semrl_check: operator-norm and numerical-range verdicts disagree "
        "(plane min " + std::to_string(v.min_value) + " vs ||T|| " +
        std::to_string(v.reference_norm) + ", range margin " + std::to_string(zr.margin) + ")");
  }
  if (zr.contains && zr.witness) {
    out.witness = zr.witness;
    out.witness_inner_product = inner(T.apply(*zr.witness), A.apply(*zr.witness));
  }
  return out;
}

/// Classical numerical range W(A) = { <Ax, x> : ||x|| = 1 }: the restricted
/// range with T the identity on the whole space.
inline NumericalRangeSample classical_numerical_range(const LinearOperator& A,
                                                      std::size_t n_samples,
                                                      std::uint64_t seed) {
  detail::require_hilbert_square(A, "A");
  const std::size_t n = A.rows;
  std::vector<CVector> basis(n, CVector(n, Complex(0.0, 0.0)));
  for (std::size_t j = 0; j < n; ++j) basis[j][j] = Complex(1.0, 0.0);
  return restricted_numerical_range(detail::identity_operator(n), A, basis, n_samples, seed);
}

}  // namespace bjortho
