#pragma once

#include <vector>

namespace spherecap {

// Legendre polynomials P_{l,d} in ambient dimension d: the Gegenbauer
// polynomials C_l^{(d-2)/2} normalized so that P_{l,d}(1) = 1. d = 3 gives
// the classical Legendre polynomials, d = 2 the Chebyshev polynomials.

struct UltrasphericalBasis {
  int d;
  int lmax;
  UltrasphericalBasis(int d_, int lmax_);
  void row(double s, double *out) const; // P_{l,d}(s) for l = 0..lmax
};

// P_{l,d}(s) via the three-term recurrence (d = 2: cos(l arccos s)).
double eval_P(int d, int l, double s);

// All degrees 0..lmax at one point, recurrence for every d.
void eval_P_row(int d, int lmax, double s, double *out);

// k-th derivative at s = 1, closed product form; 0 for k > l.
double P_deriv_at_one(int d, int l, int k);

// k-th derivative anywhere, via the shift to the (d+2k)-dimensional family:
// P^(k)_{l,d}(s) = P^(k)_{l,d}(1) * P_{l-k,d+2k}(s).
double eval_P_deriv(int d, int l, int k, double s);

// Taylor coefficient c_{k,l} = (-1)^k P^(k)_{l,d}(1) / k! of the expansion
// P_{l,d}(s) = sum_k c_{k,l} (1-s)^k; the k! is folded into the product to
// avoid intermediate overflow.
double taylor_coeff(int d, int k, int l);

// R_{n+1} = P_{l,d}(1-u) - sum_{k<=n} c_{k,l} u^k, parametrized by u = 1-s
// so callers with an accurately known small u (e.g. u = 2 sin^2(x/2)) never
// lose it to the rounding of 1-u. Two independent evaluations:
//  - series: the exact tail sum_{k=n+1}^{l} c_{k,l} u^k, truncated at
//    k = n+40; meaningful while u l^2 stays of order one.
//  - diff: direct difference, with P evaluated by a recurrence that forms
//    s P as P - u P to keep u exact.
double taylor_remainder_series(int d, int l, int n, double u);
double taylor_remainder_diff(int d, int l, int n, double u);

// Switches to the series once u l^2 <= 1, where the difference cancels to
// O(u^{n+1}).
double taylor_remainder_u(int d, int l, int n, double u);
double taylor_remainder(int d, int l, int n, double s);

struct TaylorCoeffs {
  int d = 0;
  int kmax = 0;
  int lmax = 0;
  std::vector<double> c; // row-major [k][l]
  double at(int k, int l) const { return c[static_cast<std::size_t>(k) * (lmax + 1) + l]; }
};

TaylorCoeffs make_taylor_coeffs(int d, int kmax, int lmax);

} // namespace spherecap
