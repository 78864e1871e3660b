#include <catch2/catch.hpp>

#include "test_support.hpp"

using namespace bjortho;

namespace {
const NormSpec kH2 = NormSpec::hilbert(2);
const CVector kX{{1, 0}, {0, 0}};   // (1, 0)
const CVector kY{{1, 0}, {0, 1}};   // (1, i)
}  // namespace

TEST_CASE("line minimization on the reference pair", "[ortho]") {
  // gamma = i: ||x + t i y|| = (1 + 2 t^2)^(1/2), minimum ||x|| at t = 0
  LineMinResult mi = min_norm_over_line(kH2, kX, kY, Direction::from_angle(kHalfPi));
  CHECK(mi.min_value == Approx(1.0).epsilon(1e-10));
  CHECK(mi.t_star == Approx(0.0).margin(1e-6));

  // gamma = 1: the grid oracle and the closed form agree on 1/sqrt(2) at
  // t = -1/2 (the restriction of || x + lambda y || to real lambda, whose
  // unconstrained minimizer is already real)
  LineMinResult m1 = min_norm_over_line(kH2, kX, kY, Direction::from_angle(0.0));
  double oracle = oracles::grid_min_line(kH2, kX, kY, Complex(1, 0));
  CHECK(m1.min_value == Approx(oracle).margin(1e-8));
  CHECK(m1.min_value == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(m1.t_star == Approx(-0.5).margin(1e-6));

  // y = x, gamma = i: lambda gamma purely imaginary, so the norm never dips
  LineMinResult ms = min_norm_over_line(kH2, kX, kX, Direction::from_angle(kHalfPi));
  CHECK(ms.min_value == Approx(1.0).epsilon(1e-10));
  CHECK(ms.t_star == Approx(0.0).margin(1e-6));
}

TEST_CASE("plane minimization", "[ortho]") {
  PlaneMinResult m = min_norm_over_plane(kH2, kX, kY);
  CHECK(m.min_value == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(m.lambda_star.real() == Approx(-0.5).margin(1e-5));
  CHECK(m.lambda_star.imag() == Approx(0.0).margin(1e-5));
  CHECK(m.min_value == Approx(oracles::hilbert_plane_min(kX, kY)).epsilon(1e-9));
  CHECK(m.min_value == Approx(oracles::grid_min_plane(kH2, kX, kY)).margin(1e-7));

  PlaneMinResult elementary = min_norm_over_plane(kH2, CVector{{1, 0}, {0, 0}},
                                                  CVector{{0, 0}, {1, 0}});
  CHECK(elementary.min_value == Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(elementary.lambda_star) < 1e-6);

  // l1: |1 + lambda| + |lambda| >= 1 with a flat valley of minimizers
  PlaneMinResult flat = min_norm_over_plane(NormSpec::lp(1, 2), CVector{{1, 0}, {0, 0}},
                                            CVector{{1, 0}, {1, 0}});
  CHECK(flat.min_value == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("directional orthogonality predicate", "[ortho]") {
  CHECK(is_dir_orthogonal(kH2, kX, kY, Direction::from_angle(kHalfPi)).orthogonal);
  CHECK_FALSE(is_dir_orthogonal(kH2, kX, kY, Direction::from_angle(0.0)).orthogonal);

  // y = lambda x is orthogonal exactly when lambda gamma is purely imaginary
  Rng rng(41);
  for (int t = 0; t < 25; ++t) {
    CVector x = rng.complex_vector(3);
    Complex lam = rng.complex_normal();
    if (std::abs(lam) < 0.1) continue;
    CVector y(3);
    for (std::size_t j = 0; j < 3; ++j) y[j] = lam * x[j];
    NormSpec space = oracles::random_space(rng, 3);
    double theta_perp = kHalfPi - std::arg(lam);
    CHECK(is_dir_orthogonal(space, x, y, Direction::from_angle(theta_perp)).orthogonal);
    CHECK_FALSE(is_dir_orthogonal(space, x, y, Direction::from_angle(theta_perp + 0.4)).orthogonal);
  }
}

TEST_CASE("Birkhoff-James predicate", "[ortho]") {
  CHECK_FALSE(is_bj_orthogonal(kH2, kX, kY).orthogonal);  // <x, y> = 1
  CHECK(is_bj_orthogonal(kH2, CVector{{1, 0}, {0, 0}}, CVector{{0, 0}, {1, 0}}).orthogonal);
  CHECK_FALSE(is_bj_orthogonal(NormSpec::lp(1, 2), CVector{{1, 0}, {0, 0}},
                               CVector{{1, 0}, {0.5, 0}}).orthogonal);
  CHECK(is_bj_orthogonal(NormSpec::lp_inf(2), CVector{{1, 0}, {1, 0}},
                         CVector{{1, 0}, {0, 0}}).orthogonal);
}

TEST_CASE("zero vectors are flagged, not rejected", "[ortho]") {
  CVector zero(2, Complex(0, 0));
  auto v = is_dir_orthogonal(kH2, zero, kY, Direction::from_angle(0.3));
  CHECK(v.orthogonal);
  CHECK(v.degenerate);
  auto b = is_bj_orthogonal(kH2, kX, zero);
  CHECK(b.orthogonal);
  CHECK(b.degenerate);
}

TEST_CASE("part classification on the l1 instance", "[ortho]") {
  NormSpec l1 = NormSpec::lp(1, 2);
  CVector y{{1, 0}, {0.5, 0}};
  CHECK(part_sign(l1, kX, y, Direction::from_angle(0.0)) == PartClassification::plus_only);
  CHECK(part_sign(l1, kX, y, Direction::from_angle(kHalfPi)) == PartClassification::both);
  CHECK(oracles::grid_part_sign(l1, kX, y, Complex(1, 0)) == PartClassification::plus_only);
  CHECK(oracles::grid_part_sign(l1, kX, y, Complex(0, 1)) == PartClassification::both);
}

TEST_CASE("part classification flips with the direction sign", "[ortho][property]") {
  Rng rng(43);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 2 + rng.index(3);
    NormSpec space = oracles::random_space(rng, n);
    CVector x = rng.complex_vector(n), y = rng.complex_vector(n);
    Direction g = rng.direction();
    PartClassification a = part_sign(space, x, y, g);
    PartClassification b = part_sign(space, x, y, g.antipode());
    if (a == PartClassification::both) {
      CHECK(b == PartClassification::both);
    } else if (a == PartClassification::plus_only) {
      CHECK(b == PartClassification::minus_only);
    } else {
      CHECK(b == PartClassification::plus_only);
    }
  }
}

TEST_CASE("Hilbert closed form matches the optimizer", "[ortho][property]") {
  // the two predicates share a decision boundary once the optimizer
  // tolerance is the squared closed-form tolerance over two (the norm gap
  // grows quadratically in the defect Re(gamma <y, x>))
  const double eps = 1e-6;
  const double opt_tol = 0.5 * eps * eps;
  Rng rng(47);
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    std::size_t n = 2 + rng.index(4);
    NormSpec space = NormSpec::hilbert(n);
    CVector x = rng.complex_vector(n), y = rng.complex_vector(n);
    Direction g = rng.direction();
    bool closed = dir_orthogonal_hilbert(x, y, g, eps);
    bool opt = is_dir_orthogonal(space, x, y, g, opt_tol).orthogonal;
    CHECK(closed == opt);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("directional orthogonality invariances", "[ortho][property]") {
  Rng rng(53);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 2 + rng.index(3);
    NormSpec space = oracles::random_space(rng, n);
    CVector x = rng.complex_vector(n), y = rng.complex_vector(n);
    Direction g = rng.direction();
    bool base = is_dir_orthogonal(space, x, y, g).orthogonal;

    // antipodal symmetry
    CHECK(is_dir_orthogonal(space, x, y, g.antipode()).orthogonal == base);

    // real homogeneity
    double s = 0.2 + 3.0 * rng.uniform(), r = 0.2 + 3.0 * rng.uniform();
    CVector sx(n), ry(n);
    for (std::size_t j = 0; j < n; ++j) {
      sx[j] = s * x[j];
      ry[j] = r * y[j];
    }
    CHECK(is_dir_orthogonal(space, sx, ry, g).orthogonal == base);
  }
}

TEST_CASE("Hilbert conjugate symmetry of directions", "[ortho][property]") {
  Rng rng(59);
  for (int t = 0; t < 200; ++t) {
    CVector x = rng.complex_vector(3), y = rng.complex_vector(3);
    Direction g = rng.direction();
    bool xy = dir_orthogonal_hilbert(x, y, g, 1e-6);
    bool yx = dir_orthogonal_hilbert(y, x, Direction::from_angle(-g.theta), 1e-6);
    CHECK(xy == yx);
  }
}

TEST_CASE("line map is convex and the bracket is valid", "[ortho][property]") {
  Rng rng(61);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 2 + rng.index(3);
    NormSpec space = oracles::random_space(rng, n);
    CVector x = rng.complex_vector(n), y = rng.complex_vector(n);
    Complex g = rng.direction().unit();
    CVector buf(n);
    auto phi = [&](double tt) {
      for (std::size_t j = 0; j < n; ++j) buf[j] = x[j] + tt * g * y[j];
      return norm(space, buf);
    };
    double t1 = rng.uniform(-3.0, 3.0), t2 = rng.uniform(-3.0, 3.0);
    CHECK(phi(0.5 * (t1 + t2)) <= 0.5 * (phi(t1) + phi(t2)) + 1e-12 * (1.0 + phi(t1) + phi(t2)));

    double bracket = 2.0 * norm(space, x) / norm(space, y);
    double beyond = bracket * (1.0 + 0.5 * rng.uniform());
    if (beyond > bracket) {
      CHECK(phi(beyond) > norm(space, x));
      CHECK(phi(-beyond) > norm(space, x));
    }
  }
}

TEST_CASE("BJ orthogonality equals directional orthogonality in every direction",
          "[ortho][property]") {
  Rng rng(67);
  for (int t = 0; t < 15; ++t) {
    std::size_t n = 2 + rng.index(3);
    NormSpec space = oracles::random_space(rng, n);
    CVector x = rng.complex_vector(n), y = rng.complex_vector(n);
    bool bj = is_bj_orthogonal(space, x, y).orthogonal;
    bool all = true;
    for (int k = 0; k < 72; ++k) {
      if (!is_dir_orthogonal(space, x, y, Direction::from_angle(kPi * k / 72.0)).orthogonal) {
        all = false;
        break;
      }
    }
    CHECK(bj == all);
  }
}
