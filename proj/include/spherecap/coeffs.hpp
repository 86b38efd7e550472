#pragma once

#include <complex>
#include <vector>

namespace spherecap {

// Dimension of the space of degree-l spherical harmonics on S^{d-1}:
// nu(l) = (2l+d-2)/(d-2) * binom(l+d-3, l) for d >= 3; for d = 2 it is
// 2 - [l = 0]. d = 3 gives 2l + 1.
int harmonic_dim(int d, int l);

// Band-limited coefficient array {fhat_{lj}}, degree-major. The grid basis
// (module sphere2, d = 3) is real-valued; block layout there is
// j = 0: m = 0, then (cos, sin) pairs for m = 1..l.
struct HarmonicCoeffs {
  int d = 3;
  int L = 0;
  std::vector<std::vector<std::complex<double>>> blocks;

  static HarmonicCoeffs zeros(int d, int L);
  double sq_norm() const; // sum over all blocks of |fhat|^2
};

} // namespace spherecap
