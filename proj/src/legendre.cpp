#include "spherecap/legendre.hpp"

#include "spherecap/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace spherecap {

namespace {

void check_domain(int d, int l, double s) {
  if (d < 2) throw std::domain_error("legendre: dimension must be >= 2");
  if (l < 0) throw std::domain_error("legendre: degree must be >= 0");
  if (!(s >= -1.0 && s <= 1.0)) throw std::domain_error("legendre: argument must lie in [-1,1]");
}

} // namespace

UltrasphericalBasis::UltrasphericalBasis(int d_, int lmax_) : d(d_), lmax(lmax_) {
  if (d < 2) throw std::domain_error("UltrasphericalBasis: dimension must be >= 2");
  if (lmax < 0) throw std::domain_error("UltrasphericalBasis: lmax must be >= 0");
}

void UltrasphericalBasis::row(double s, double *out) const { eval_P_row(d, lmax, s, out); }

void eval_P_row(int d, int lmax, double s, double *out) {
  check_domain(d, lmax, s);
  out[0] = 1.0;
  if (lmax == 0) return;
  out[1] = s;
  for (int l = 1; l < lmax; ++l)
    out[l + 1] = ((2 * l + d - 2) * s * out[l] - l * out[l - 1]) / (l + d - 2);
}

double eval_P(int d, int l, double s) {
  check_domain(d, l, s);
  if (l == 0) return 1.0;
  if (l == 1) return s;
  if (d == 2) return std::cos(l * std::acos(s));
  double pm = 1.0, pc = s;
  for (int k = 1; k < l; ++k) {
    double pn = ((2 * k + d - 2) * s * pc - k * pm) / (k + d - 2);
    pm = pc;
    pc = pn;
  }
  return pc;
}

double P_deriv_at_one(int d, int l, int k) {
  if (d < 2) throw std::domain_error("legendre: dimension must be >= 2");
  if (l < 0 || k < 0) throw std::domain_error("legendre: degree and order must be >= 0");
  if (k > l) return 0.0;
  double v = 1.0;
  for (int j = 1; j <= k; ++j)
    v *= static_cast<double>(l - j + 1) * (l + j + d - 3) / (2 * j + d - 3);
  return v;
}

double eval_P_deriv(int d, int l, int k, double s) {
  check_domain(d, l, s);
  if (k < 0) throw std::domain_error("legendre: derivative order must be >= 0");
  if (k > l) return 0.0;
  if (k == 0) return eval_P(d, l, s);
  return P_deriv_at_one(d, l, k) * eval_P(d + 2 * k, l - k, s);
}

double taylor_coeff(int d, int k, int l) {
  if (d < 2) throw std::domain_error("legendre: dimension must be >= 2");
  if (l < 0 || k < 0) throw std::domain_error("legendre: degree and order must be >= 0");
  if (k > l) return 0.0;
  double v = 1.0;
  for (int j = 1; j <= k; ++j)
    v *= static_cast<double>(l - j + 1) * (l + j + d - 3) / (static_cast<double>(j) * (2 * j + d - 3));
  return (k % 2 == 0) ? v : -v;
}

namespace {

void check_remainder_args(int d, int l, int n, double u) {
  if (d < 2) throw std::domain_error("legendre: dimension must be >= 2");
  if (l < 0) throw std::domain_error("legendre: degree must be >= 0");
  if (n < 0) throw std::domain_error("legendre: expansion order must be >= 0");
  if (!(u >= 0.0 && u <= 2.0)) throw std::domain_error("legendre: 1-s must lie in [0,2]");
}

// double-double scalars for the recurrence in taylor_remainder_diff: the
// difference it feeds cancels O(1) values down to O(u^{n+1}), so plain
// double rounding in P would dominate the result
struct dd {
  double hi = 0.0, lo = 0.0;
};

dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

dd dd_renorm(double hi, double lo) {
  double s = hi + lo;
  return {s, lo - (s - hi)};
}

dd dd_add(const dd &a, const dd &b) {
  dd s = two_sum(a.hi, b.hi);
  return dd_renorm(s.hi, s.lo + a.lo + b.lo);
}

dd dd_neg(const dd &a) { return {-a.hi, -a.lo}; }

dd dd_mul_d(const dd &a, double b) {
  double p = a.hi * b;
  double e = std::fma(a.hi, b, -p);
  return dd_renorm(p, e + a.lo * b);
}

dd dd_div_d(const dd &a, double b) {
  double q1 = a.hi / b;
  double r = std::fma(-q1, b, a.hi) + a.lo;
  return dd_renorm(q1, r / b);
}

} // namespace

double taylor_remainder_series(int d, int l, int n, double u) {
  check_remainder_args(d, l, n, u);
  if (l <= n) return 0.0;
  const int ktop = std::min(l, n + 40);
  Accum acc;
  double uk = std::pow(u, n + 1);
  for (int k = n + 1; k <= ktop; ++k) {
    acc.add(taylor_coeff(d, k, l) * uk);
    uk *= u;
  }
  return acc.total();
}

double taylor_remainder_diff(int d, int l, int n, double u) {
  check_remainder_args(d, l, n, u);
  if (l <= n) return 0.0;
  // P_{l,d}(1-u) with the recurrence product s P written as P - u P, so u
  // enters exactly; carried in double-double because the subtraction below
  // cancels down to O(u^{n+1})
  dd pc{1.0, 0.0};
  if (l >= 1) {
    dd pm{1.0, 0.0};
    pc = two_sum(1.0, -u);
    for (int k = 1; k < l; ++k) {
      dd sp = dd_add(pc, dd_neg(dd_mul_d(pc, u)));
      dd num = dd_add(dd_mul_d(sp, static_cast<double>(2 * k + d - 2)),
                      dd_neg(dd_mul_d(pm, static_cast<double>(k))));
      pm = pc;
      pc = dd_div_d(num, static_cast<double>(k + d - 2));
    }
  }
  Accum acc;
  acc.add(pc.hi);
  acc.add(pc.lo);
  double uk = 1.0;
  for (int k = 0; k <= n; ++k) {
    acc.add(-taylor_coeff(d, k, l) * uk);
    uk *= u;
  }
  return acc.total();
}

double taylor_remainder_u(int d, int l, int n, double u) {
  check_remainder_args(d, l, n, u);
  if (l <= n) return 0.0;
  return (u * l * static_cast<double>(l) <= 1.0) ? taylor_remainder_series(d, l, n, u)
                                                 : taylor_remainder_diff(d, l, n, u);
}

double taylor_remainder(int d, int l, int n, double s) {
  check_domain(d, l, s);
  return taylor_remainder_u(d, l, n, 1.0 - s);
}

TaylorCoeffs make_taylor_coeffs(int d, int kmax, int lmax) {
  if (kmax < 0 || lmax < 0) throw std::domain_error("make_taylor_coeffs: negative extent");
  TaylorCoeffs t;
  t.d = d;
  t.kmax = kmax;
  t.lmax = lmax;
  t.c.resize(static_cast<std::size_t>(kmax + 1) * (lmax + 1));
  for (int k = 0; k <= kmax; ++k)
    for (int l = 0; l <= lmax; ++l)
      t.c[static_cast<std::size_t>(k) * (lmax + 1) + l] = taylor_coeff(d, k, l);
  return t;
}

} // namespace spherecap
