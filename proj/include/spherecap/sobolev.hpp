#pragma once

#include "spherecap/caps.hpp"
#include "spherecap/coeffs.hpp"

#include <string>
#include <vector>

namespace spherecap {

// Coefficient-space Sobolev machinery. All norm-valued functions return
// squared norms; callers take square roots.

// l(l+d-2), the Laplace-Beltrami eigenvalue on degree-l harmonics.
double laplace_eigenvalue(int d, int l);

// Degree-l block scaled by {l(l+d-2)}^beta; the l = 0 block is annihilated
// for beta > 0 and kept for beta = 0.
HarmonicCoeffs laplace_power(const HarmonicCoeffs &c, double beta);

// Homogeneous squared norm sum_l {l(l+d-2)}^alpha sum_j |fhat|^2.
double sobolev_norm(const HarmonicCoeffs &c, double alpha);

// Inhomogeneous variant sum_l (1 + {l(l+d-2)}^{1/2})^{2 alpha} sum_j |fhat|^2,
// l = 0 included with unit weight.
double halpha_norm(const HarmonicCoeffs &c, double alpha);

// Multiplier operators T_k: block l scaled by c_{k,l} / (2^k {l(l+d-2)}^k),
// l = 0 dropped. The scale factors are bounded above and below uniformly in
// l, so T_k and its inverse are both continuous.
HarmonicCoeffs T_k_apply(const HarmonicCoeffs &c, int k);
HarmonicCoeffs T_k_inverse(const HarmonicCoeffs &c, int k);

// g_k = T_k((-Delta)^k f): block l scaled by c_{k,l}/2^k. These are the
// correction functions for which the square function collapses to the
// Taylor remainder of the multiplier.
HarmonicCoeffs canonical_g(const HarmonicCoeffs &c, int k);

// Coefficient-side squared square-function norm sum_{l>=1} W(l) sum_j
// |fhat|^2, with W = I_{alpha,n}(l) for 2n < alpha < 2n+2 and W = J_n(l)
// for alpha = 2n. When the alpha = 2n fine condition fails the value is
// still computed; a note is appended to *warnings if given.
double sqnorm_coeff(const HarmonicCoeffs &c, double alpha, const CapAverageContext &ctx,
                    std::vector<std::string> *warnings = nullptr);

// Poisson transform: block l scaled by r^l, 0 < r < 1.
HarmonicCoeffs poisson(const HarmonicCoeffs &c, double r);

struct NormReport {
  double alpha = 0.0;
  double lhs = 0.0; // homogeneous Sobolev squared norm
  double rhs = 0.0; // coefficient-side square-function squared norm
  double ratio = 0.0;
  std::string branch; // "fractional" or "integer-even"
  std::vector<std::string> warnings;
};

// The two sides of the norm equivalence for one function; their ratio is
// the empirical equivalence constant.
NormReport equivalence_report(const HarmonicCoeffs &c, double alpha,
                              const CapAverageContext &ctx);

} // namespace spherecap
