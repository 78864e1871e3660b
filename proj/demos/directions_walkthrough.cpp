// Walks through the basic objects on the pair x = (1, 0), y = (1, i): the
// directional predicate, the full direction set, a functional witness, and
// the same questions in l1 where the non-smooth geometry widens the answer
// to a genuine arc.

#include <cstdio>

#include "bjortho/bjortho.hpp"

using namespace bjortho;

int main() {
  NormSpec h2 = NormSpec::hilbert(2);
  CVector x{{1, 0}, {0, 0}};
  CVector y{{1, 0}, {0, 1}};

  std::printf("x = (1, 0), y = (1, i) in Hilbert C^2\n");
  std::printf("  <x, y> = %g%+gi\n", inner(x, y).real(), inner(x, y).imag());

  auto along_i = is_dir_orthogonal(h2, x, y, Direction::from_angle(kHalfPi));
  auto along_1 = is_dir_orthogonal(h2, x, y, Direction::from_angle(0.0));
  auto bj = is_bj_orthogonal(h2, x, y);
  std::printf("  orthogonal along i: %s (line min %.12g)\n", along_i ? "yes" : "no",
              along_i.min_value);
  std::printf("  orthogonal along 1: %s (line min %.12g)\n", along_1 ? "yes" : "no",
              along_1.min_value);
  std::printf("  Birkhoff-James:     %s (plane min %.12g at lambda = %.6g%+.6gi)\n",
              bj ? "yes" : "no", bj.min_value, bj.lambda_star.real(), bj.lambda_star.imag());

  ArcSet s = direction_set(h2, x, y);
  std::printf("  direction set: %s\n", to_json(s).c_str());

  auto w = witness(h2, x, y, Direction::from_angle(kHalfPi));
  if (w) {
    std::printf("  witness u* = (%g%+gi, %g%+gi), Re u*(y) = %.2e\n",
                w->functional.coefficients[0].real(), w->functional.coefficients[0].imag(),
                w->functional.coefficients[1].real(), w->functional.coefficients[1].imag(),
                w->residual_re_y);
  }

  NormSpec l1 = NormSpec::lp(1, 2);
  CVector y1{{1, 0}, {0.5, 0}};
  std::printf("\nx = (1, 0), y = (1, 1/2) in l1(C^2)\n");
  std::printf("  x smooth: %s\n", is_smooth_point(l1, x) ? "yes" : "no");
  ArcSet arc = direction_set(l1, x, y1);
  std::printf("  direction set: %s\n", to_json(arc).c_str());
  return 0;
}
