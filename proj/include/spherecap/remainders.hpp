#pragma once

#include "spherecap/caps.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace spherecap {

// Taylor-remainder deviations of the multiplier and their weighted
// t-integrals. M picks its evaluation path by t*l: the partial-sum
// difference m - sum_k (c_{k,l}/2^k) A_k cancels catastrophically for small
// t, where the integral of the remainder term converges fastest, and vice
// versa.

// M^rho_{n,l,t}; 0 for l <= n (a degree-l polynomial has an exact order-n
// expansion there).
double M(const CapAverageContext &ctx, int n, int l, double t);

// The two paths individually, for cross-validation on the overlap window
// t*l in [0.5, 2].
double M_via_remainder(const CapAverageContext &ctx, int n, int l, double t);
double M_via_partial(const CapAverageContext &ctx, int n, int l, double t);

// N^rho_{n,l,t} = M_n - (c_{n,l}/2^n) A_n M_0 (n >= 1); 0 for l <= n-1.
double N(const CapAverageContext &ctx, int n, int l, double t);

// Algebraically equal form N = M_{n-1} - (c_{n,l}/2^n) A_n m, kept for tests.
double N_form2(const CapAverageContext &ctx, int n, int l, double t);

// I^{rho,T}_{alpha,n}(l) = integral of |M|^2 dt/t^{2 alpha + 1} over (0, T];
// requires 2n < alpha < 2(n+1). The integral is computed in u = ln(T/t) with
// oscillation-adaptive panels and an analytic small-t tail below
// t_min = T * min(1e-6, l^{-4}).
double I_integral(const CapAverageContext &ctx, double alpha, int n, int l);

// J^{rho,T}_n(l) = integral of |N|^2 dt/t^{4n+1}, for the alpha = 2n case.
double J_integral(const CapAverageContext &ctx, int n, int l);

enum class SweepMode { I, J };

struct SweepRow {
  int l = 0;
  double value = 0.0;
  double normalized = 0.0; // value / l^{2 alpha} (I) or value / l^{4n} (J)
  bool failed = false;
};

struct SweepResult {
  int d = 0;
  SweepMode mode = SweepMode::I;
  double alpha = 0.0; // I mode
  int n = 0;
  std::string weight_id;
  std::vector<SweepRow> rows;
  double slope = 0.0;      // least squares on (ln l, ln value), top half of range
  double window_lo = 0.0;  // smallest l entering the fit
  double window_hi = 0.0;
  std::vector<std::string> flags;
  bool partial = false;
};

// Rows are independent and evaluated in parallel; per-row quadrature
// failures are flagged and the sweep continues (partial = true).
SweepResult sweep(const CapAverageContext &ctx, SweepMode mode, double alpha, int n,
                  const std::vector<int> &ls);
SweepResult sweep_serial(const CapAverageContext &ctx, SweepMode mode, double alpha, int n,
                         const std::vector<int> &ls);

// CSV rows `l,value,normalized` with a `# slope=<v> window=[a,b]` trailer.
void write_sweep_csv(const SweepResult &r, std::ostream &os);

} // namespace spherecap
