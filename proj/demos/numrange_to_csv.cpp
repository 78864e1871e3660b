// Samples a numerical range and writes (re, im) rows for plotting.
// Usage: demo_numrange [n_samples] [seed] > points.csv

#include <cstdio>
#include <cstdlib>

#include "bjortho/bjortho.hpp"

using namespace bjortho;

int main(int argc, char** argv) {
  std::size_t samples = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
  std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;

  // a non-normal matrix: the range is strictly larger than the spectrum hull
  LinearOperator A = LinearOperator::hilbert_map(
      3, CVector{{1, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 1}, {0.5, 0}, {0, 0}, {0, 0}, {-1, 0}});
  NumericalRangeSample s = classical_numerical_range(A, samples, seed);

  std::printf("re,im\n");
  for (Complex p : s.points) std::printf("%.17g,%.17g\n", p.real(), p.imag());
  return 0;
}
