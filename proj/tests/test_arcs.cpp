#include <catch2/catch.hpp>

#include "test_support.hpp"

using namespace bjortho;

namespace {
const NormSpec kH2 = NormSpec::hilbert(2);
const CVector kX{{1, 0}, {0, 0}};
const CVector kY{{1, 0}, {0, 1}};
}  // namespace

TEST_CASE("direction set of the reference pair is the pair at pi/2", "[arcs]") {
  ArcSet s = direction_set(kH2, kX, kY);
  REQUIRE(s.kind == ArcSet::Kind::antipodal_arcs);
  CHECK(s.is_point_pair());
  CHECK(s.theta_start == Approx(kHalfPi).margin(1e-7));
}

TEST_CASE("l1 arc has the predicted endpoints", "[arcs]") {
  ArcSet s = direction_set(NormSpec::lp(1, 2), kX, CVector{{1, 0}, {0.5, 0}});
  REQUIRE(s.kind == ArcSet::Kind::antipodal_arcs);
  CHECK_FALSE(s.is_point_pair());
  CHECK(s.theta_start == Approx(kPi / 3.0).margin(1e-6));
  CHECK(s.theta_end == Approx(2.0 * kPi / 3.0).margin(1e-6));
}

TEST_CASE("BJ-orthogonal pairs give the full circle", "[arcs]") {
  ArcSet s = direction_set(NormSpec::lp_inf(2), CVector{{1, 0}, {1, 0}}, CVector{{1, 0}, {0, 0}});
  CHECK(s.kind == ArcSet::Kind::full);
}

TEST_CASE("scalar multiples in closed form", "[arcs]") {
  CHECK(scalar_multiple_directions(Complex(1, 0)).theta_start == Approx(kHalfPi));
  CHECK(scalar_multiple_directions(Complex(0, 1)).theta_start == Approx(0.0).margin(1e-15));
  CHECK(scalar_multiple_directions(Complex(1, 1)).theta_start == Approx(kPi / 4.0));
  CHECK(scalar_multiple_directions(Complex(0, 0)).kind == ArcSet::Kind::full);
  CHECK(scalar_multiple_directions(Complex(0, 0)).degenerate_input);
}

TEST_CASE("direction_set routes scalar multiples to the closed form", "[arcs]") {
  Rng rng(71);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + rng.index(4);
    NormSpec space = oracles::random_space(rng, n);
    CVector x = rng.complex_vector(n);
    Complex lam = rng.complex_normal();
    if (std::abs(lam) < 0.05) continue;
    CVector y(n);
    for (std::size_t j = 0; j < n; ++j) y[j] = lam * x[j];
    ArcSet got = direction_set(space, x, y);
    ArcSet want = scalar_multiple_directions(lam);
    REQUIRE(got.is_point_pair());
    CHECK(std::abs(wrap_signed_half_pi(got.theta_start - want.theta_start)) <= 1e-9);
  }
}

TEST_CASE("the generic scan also localizes the scalar-multiple pair", "[arcs]") {
  DirectionSetOptions opts;
  opts.collinear_fast_path = false;
  CVector x{{1, 0}, {2, 0}};
  Complex lam(0, -3);
  CVector y{{0, -3}, {0, -6}};
  ArcSet got = direction_set(kH2, x, y, opts);
  ArcSet want = scalar_multiple_directions(lam);
  REQUIRE(got.is_point_pair());
  CHECK(std::abs(wrap_signed_half_pi(got.theta_start - want.theta_start)) <= 1e-6);
}

TEST_CASE("arc membership semantics", "[arcs]") {
  CHECK(arc_membership(ArcSet::full(), Direction::from_angle(1.234)));
  ArcSet s = ArcSet::arcs(kPi / 3.0, 2.0 * kPi / 3.0);
  CHECK(arc_membership(s, Direction::from_angle(kHalfPi)));
  CHECK_FALSE(arc_membership(s, Direction::from_angle(0.0)));
  // endpoints are members
  CHECK(arc_membership(s, Direction::from_angle(kPi / 3.0)));
  CHECK(arc_membership(s, Direction::from_angle(2.0 * kPi / 3.0)));
  // the antipodal copy is implied
  CHECK(arc_membership(s, Direction::from_angle(kPi / 3.0 + kPi)));
  CHECK(arc_membership(s, Direction::from_angle(kHalfPi + kPi)));
}

TEST_CASE("membership is antipodal-symmetric", "[arcs][property]") {
  Rng rng(73);
  ArcSet arcs[] = {ArcSet::full(), ArcSet::arcs(0.3, 1.1), ArcSet::arcs(2.9, 3.5),
                   ArcSet::arcs(1.0, 1.0)};
  for (const ArcSet& s : arcs) {
    for (int k = 0; k < 500; ++k) {
      Direction g = rng.direction();
      CHECK(arc_membership(s, g) == arc_membership(s, g.antipode()));
    }
  }
}

TEST_CASE("canonical representation", "[arcs]") {
  ArcSet s = ArcSet::arcs(2.9, 3.5);  // start beyond pi gets shifted down
  CHECK(s.theta_start >= 0.0);
  CHECK(s.theta_start < kPi);
  CHECK(s.theta_end - s.theta_start == Approx(0.6).epsilon(1e-12));
  CHECK_THROWS_AS(ArcSet::arcs(0.0, 3.5), std::invalid_argument);
}

TEST_CASE("half circles", "[arcs]") {
  HalfCircle u{Direction::from_angle(0.7)};
  CHECK(u.contains(Direction::from_angle(0.7)));
  CHECK(u.contains(Direction::from_angle(0.7 + kPi)));
  CHECK(u.contains(Direction::from_angle(2.0)));
  CHECK_FALSE(u.contains(Direction::from_angle(0.5)));
  Rng rng(79);
  for (int t = 0; t < 200; ++t) {
    Direction beta = rng.direction();
    Direction g = rng.direction();
    HalfCircle ub{beta};
    // -U_beta = U_{-beta}
    CHECK(ub.contains(g) == ub.negated().contains(g.antipode()));
  }
}

TEST_CASE("direction sets exist and match the predicate", "[arcs][property]") {
  Rng rng(83);
  int arcs_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + rng.index(4);
    NormSpec space = oracles::random_space(rng, n);
    CVector x = rng.complex_vector(n), y = rng.complex_vector(n);
    if (trial % 2 == 0 && !space.smooth_family() && space.kind() == NormSpec::Kind::lp &&
        space.p() == 1.0) {
      x[n - 1] = Complex(0, 0);  // non-smooth point, so genuine arcs appear
    }
    ArcSet s = direction_set(space, x, y);
    if (s.kind == ArcSet::Kind::antipodal_arcs && !s.is_point_pair()) ++arcs_seen;

    if (s.kind == ArcSet::Kind::full) {
      CHECK(is_bj_orthogonal(space, x, y).orthogonal);
      continue;
    }
    CHECK_FALSE(is_bj_orthogonal(space, x, y).orthogonal);
    // refined endpoints remain orthogonal at 10x the predicate tolerance
    for (double th : {s.theta_start, s.theta_end}) {
      CHECK(is_dir_orthogonal(space, x, y, Direction::from_angle(th), 1e-7).orthogonal);
    }
    // members sampled inside the arc are orthogonal; far-outside angles are not
    if (!s.is_point_pair()) {
      double mid = 0.5 * (s.theta_start + s.theta_end);
      CHECK(is_dir_orthogonal(space, x, y, Direction::from_angle(mid)).orthogonal);
    }
  }
  CHECK(arcs_seen > 0);
}

TEST_CASE("smooth families collapse to pairs or the full circle", "[arcs][property]") {
  Rng rng(89);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + rng.index(4);
    NormSpec space = oracles::random_smooth_space(rng, n);
    CVector x = rng.complex_vector(n), y = rng.complex_vector(n);
    ArcSet s = direction_set(space, x, y);
    if (s.kind == ArcSet::Kind::antipodal_arcs) CHECK(s.is_point_pair());
  }
}

TEST_CASE("thin arcs are resolved below the scan resolution", "[arcs]") {
  // arc = { theta : |cos theta| <= 0.001 }, width ~ 2e-3 rad, far below the
  // default scan step; both endpoints sit inside a single scan edge
  NormSpec l1 = NormSpec::lp(1, 2);
  CVector x{{1, 0}, {0, 0}}, y{{1, 0}, {0.001, 0}};
  ArcSet s = direction_set(l1, x, y);
  REQUIRE(s.kind == ArcSet::Kind::antipodal_arcs);
  CHECK_FALSE(s.is_point_pair());
  CHECK(s.theta_start == Approx(std::acos(0.001)).margin(1e-6));
  CHECK(s.theta_end == Approx(std::acos(-0.001)).margin(1e-6));
}

TEST_CASE("arc JSON serialization", "[arcs]") {
  CHECK(to_json(ArcSet::full()) == "{\"kind\":\"full\"}");
  std::string j = to_json(ArcSet::arcs(1.0471975511965976, 2.0943951023931953));
  CHECK(j.find("\"kind\":\"arcs\"") != std::string::npos);
  CHECK(j.find("1.0471975511965976") != std::string::npos);
  CHECK(j.find("2.0943951023931953") != std::string::npos);
}

TEST_CASE("degenerate inputs yield the full circle with a flag", "[arcs]") {
  CVector zero(2, Complex(0, 0));
  ArcSet s = direction_set(kH2, zero, kY);
  CHECK(s.kind == ArcSet::Kind::full);
  CHECK(s.degenerate_input);
}
