#include <catch2/catch.hpp>

#include "test_support.hpp"

using namespace bjortho;

TEST_CASE("lp and Hilbert norms on reference vectors", "[spaces]") {
  CHECK(norm(NormSpec::lp(2, 2), CVector{{1, 0}, {0, 1}}) == Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(norm(NormSpec::lp(1, 3), CVector{{1, 0}, {-1, 0}, {0, 1}}) == Approx(3.0).epsilon(1e-14));
  CHECK(norm(NormSpec::lp_inf(3), CVector{{1, 0}, {-2, 0}, {0, 1}}) == Approx(2.0).epsilon(1e-14));

  // ||(1 + ti, -t)|| = (1 + 2 t^2)^(1/2) for x = (1,0), y = (1,i), gamma = i
  NormSpec h2 = NormSpec::hilbert(2);
  for (double t : {-1.5, -0.3, 0.0, 0.7, 2.0}) {
    CVector v{{1, t}, {-t, 0}};
    CHECK(norm(h2, v) == Approx(std::sqrt(1.0 + 2.0 * t * t)).epsilon(1e-14));
  }
}

TEST_CASE("weighted lp norm and its dual", "[spaces]") {
  NormSpec w1 = NormSpec::weighted_lp(1.0, {2.0, 0.5});
  CHECK(norm(w1, CVector{{1, 0}, {0, -4}}) == Approx(4.0).epsilon(1e-14));
  // duality: |f(z)| <= ||f||_* ||z|| with a maximizing z on each axis
  Functional f{CVector{{3, 0}, {0, 1}}};
  CHECK(dual_norm(w1, f) == Approx(std::max(3.0 / 2.0, 1.0 / 0.5)).epsilon(1e-14));

  NormSpec w3 = NormSpec::weighted_lp(3.0, {0.7, 1.9});
  Functional g{CVector{{1, 1}, {-2, 0}}};
  double lhs = dual_norm(w3, g);
  double oracle = oracles::grid_dual_norm_dim2(w3, g);
  CHECK(lhs == Approx(oracle).margin(1e-4));
}

TEST_CASE("dual norms in closed form", "[spaces]") {
  CVector f2{{1.0 / std::sqrt(2.0), 0}, {0, -1.0 / std::sqrt(2.0)}};
  CHECK(dual_norm(NormSpec::lp(2, 2), Functional{f2}) == Approx(1.0).epsilon(1e-14));
  CHECK(dual_norm(NormSpec::lp(1, 2), Functional{CVector{{1, 0}, {3, 0}}}) == Approx(3.0).epsilon(1e-14));

  // lp(3): verified against brute-force sphere maximization
  NormSpec l3 = NormSpec::lp(3, 2);
  Functional f{CVector{{1, 0}, {1, 0}}};
  double d = dual_norm(l3, f);
  CHECK(d == Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-13));
  CHECK(d == Approx(oracles::grid_dual_norm_dim2(l3, f)).margin(1e-4));

  CHECK_THROWS_AS(dual_norm(NormSpec::operator_norm(NormSpec::hilbert(2), NormSpec::hilbert(2)),
                            Functional{CVector(4, Complex(1, 0))}),
                  std::invalid_argument);
}

TEST_CASE("inner product conventions", "[spaces]") {
  CVector x{{1, 0}, {0, 0}};
  CVector y{{1, 0}, {0, 1}};
  CHECK(inner(x, y) == Complex(1, 0));  // <x, y> = 1 for x=(1,0), y=(1,i)

  CVector z{{3, 0}, {0, 4}};
  CHECK(inner(z, z).real() == Approx(25.0));
  CHECK(inner(z, z).imag() == Approx(0.0).margin(1e-15));

  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    CVector a = rng.complex_vector(4), b = rng.complex_vector(4);
    Complex ab = inner(a, b), ba = inner(b, a);
    CHECK(ab.real() == Approx(ba.real()).margin(1e-12));
    CHECK(ab.imag() == Approx(-ba.imag()).margin(1e-12));
    // linearity in the first slot
    Complex s = rng.complex_normal();
    CVector sa = a;
    for (Complex& w : sa) w *= s;
    Complex lhs = inner(sa, b);
    Complex rhs = s * ab;
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("operator norms: exact routes", "[spaces]") {
  auto d = LinearOperator::hilbert_map(2, CVector{{1, 0}, {0, 0}, {0, 0}, {-1, 0}});
  auto r1 = operator_norm(d);
  CHECK(r1.value == Approx(1.0).epsilon(1e-13));
  CHECK(r1.certified);

  auto n2 = operator_norm(LinearOperator::hilbert_map(2, CVector{{0, 0}, {2, 0}, {0, 0}, {0, 0}}));
  CHECK(n2.value == Approx(2.0).epsilon(1e-13));

  // l1 -> l1 equals the max column sum, here exact through column extremes
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    CVector e(9);
    for (Complex& z : e) z = rng.complex_normal();
    LinearOperator T(3, 3, e, NormSpec::lp(1, 3), NormSpec::lp(1, 3));
    auto r = operator_norm(T);
    CHECK(r.certified);
    CHECK(r.value == Approx(oracles::l1_to_l1_induced(T)).epsilon(1e-12));
  }

  // linf -> linf equals the max row sum: rows (1, -2) and (3i, 0.5)
  CVector e{{1, 0}, {-2, 0}, {0, 3}, {0.5, 0}};
  LinearOperator T(2, 2, e, NormSpec::lp_inf(2), NormSpec::lp_inf(2));
  auto r = operator_norm(T);
  CHECK(r.certified);
  CHECK(r.value == Approx(3.5).epsilon(1e-12));
}

TEST_CASE("operator norm multistart ascent against the SVD", "[spaces]") {
  // lp(2) spaces take the general path; mathematically the norm equals the
  // top singular value computed on the Hilbert route
  Rng rng(31);
  for (int t = 0; t < 8; ++t) {
    std::size_t n = 2 + rng.index(2);
    CVector e(n * n);
    for (Complex& z : e) z = rng.complex_normal();
    LinearOperator general(n, n, e, NormSpec::lp(2, n), NormSpec::lp(2, n));
    auto exact = operator_norm(LinearOperator::hilbert_map(n, e));
    auto ascent = operator_norm(general);
    CHECK_FALSE(ascent.certified);
    CHECK(ascent.value <= exact.value * (1.0 + 1e-9));
    CHECK(ascent.value >= exact.value * (1.0 - 1e-6));
  }
}

TEST_CASE("norm attainment sets", "[spaces]") {
  auto id2 = norm_attainment_set(
      LinearOperator::hilbert_map(2, CVector{{1, 0}, {0, 0}, {0, 0}, {1, 0}}));
  CHECK(id2.kind == NormAttainmentSet::Kind::hilbert_subspace);
  CHECK(id2.vectors.size() == 2);

  auto diag21 = norm_attainment_set(
      LinearOperator::hilbert_map(2, CVector{{2, 0}, {0, 0}, {0, 0}, {1, 0}}));
  REQUIRE(diag21.vectors.size() == 1);
  CHECK(std::abs(diag21.vectors[0][0]) == Approx(1.0).epsilon(1e-12));

  auto diag221 = norm_attainment_set(LinearOperator::hilbert_map(
      3, CVector{{2, 0}, {0, 0}, {0, 0}, {0, 0}, {2, 0}, {0, 0}, {0, 0}, {0, 0}, {1, 0}}));
  CHECK(diag221.vectors.size() == 2);

  // every attainment vector really attains the norm, and the basis is
  // orthonormal
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    auto T = oracles::random_hilbert_operator(rng, 3);
    auto att = norm_attainment_set(T);
    for (std::size_t i = 0; i < att.vectors.size(); ++i) {
      const CVector& v = att.vectors[i];
      double nv = std::sqrt(inner(v, v).real());
      CHECK(nv == Approx(1.0).epsilon(1e-10));
      CHECK(std::sqrt(inner(T.apply(v), T.apply(v)).real()) >=
            att.operator_norm_value * (1.0 - 1e-8));
      for (std::size_t j = i + 1; j < att.vectors.size(); ++j) {
        CHECK(std::abs(inner(v, att.vectors[j])) < 1e-10);
      }
    }
  }

  // sampled (non-Hilbert) attainment keeps only near-maximizers
  CVector e{{3, 0}, {0, 0}, {0, 0}, {1, 0}};
  LinearOperator T(2, 2, e, NormSpec::lp(1, 2), NormSpec::lp(1, 2));
  auto att = norm_attainment_set(T);
  CHECK(att.kind == NormAttainmentSet::Kind::sampled_points);
  REQUIRE_FALSE(att.vectors.empty());
  for (std::size_t i = 0; i < att.vectors.size(); ++i) {
    CHECK(norm(NormSpec::lp(1, 2), att.vectors[i]) == Approx(1.0).epsilon(1e-9));
    CHECK(att.residuals[i] <= 1e-8);
  }
}

TEST_CASE("norm axioms hold on random instances", "[spaces][property]") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng.index(5);
    NormSpec space = oracles::random_space(rng, n);
    CVector x = rng.complex_vector(n), y = rng.complex_vector(n);
    double nx = norm(space, x), ny = norm(space, y);
    CVector sum(n);
    for (std::size_t j = 0; j < n; ++j) sum[j] = x[j] + y[j];
    CHECK(norm(space, sum) <= (nx + ny) * (1.0 + 1e-12));

    Complex alpha = rng.complex_normal();
    CVector ax(n);
    for (std::size_t j = 0; j < n; ++j) ax[j] = alpha * x[j];
    CHECK(norm(space, ax) == Approx(std::abs(alpha) * nx).epsilon(1e-12));
  }
}

TEST_CASE("Hilbert norm agrees with the inner product", "[spaces][property]") {
  Rng rng(102);
  for (int trial = 0; trial < 50; ++trial) {
    CVector x = rng.complex_vector(4);
    double n2 = norm(NormSpec::hilbert(4), x);
    CHECK(n2 * n2 == Approx(inner(x, x).real()).epsilon(1e-12));
    CHECK(std::abs(inner(x, x).imag()) < 1e-12);
  }
}

TEST_CASE("Hoelder inequality against the dual norm", "[spaces][property]") {
  Rng rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng.index(4);
    NormSpec space = oracles::random_space(rng, n);
    Functional f{rng.complex_vector(n)};
    CVector x = rng.complex_vector(n);
    CHECK(std::abs(f(x)) <= dual_norm(space, f) * norm(space, x) * (1.0 + 1e-10));
  }
}

TEST_CASE("input validation", "[spaces]") {
  CHECK_THROWS_AS(norm(NormSpec::hilbert(2), CVector{{1, 0}}), std::invalid_argument);
  CVector bad{{1, 0}, {std::numeric_limits<double>::quiet_NaN(), 0}};
  CHECK_THROWS_AS(norm(NormSpec::hilbert(2), bad), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::lp(0.5, 2), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::weighted_lp(2.0, {1.0, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(inner(CVector{{1, 0}}, CVector{{1, 0}, {0, 0}}), std::invalid_argument);
}
