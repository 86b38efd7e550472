#pragma once

#include <string>
#include <utility>
#include <vector>

namespace spherecap {

enum class WeightKind { constant, indicator, power, table };

const char *to_string(WeightKind k);

// A weight rho on [0, T] with markers 0 < t0 < T0 <= T, T0 < pi. The markers
// locate an interval of positive mass; all averaging is driven by rho.
struct Weight {
  WeightKind kind = WeightKind::constant;
  double T = 0.0;
  double t0 = 0.0;
  double T0 = 0.0;
  double p = 0.0;                                  // power kind only
  std::vector<std::pair<double, double>> table;    // table kind only, sorted (theta, rho)

  // Default markers t0 = T/4, T0 = min(3T/4, 0.99 pi) when a kind has no
  // intrinsic ones (rho > 0 everywhere leaves the choice free).
  static Weight constant(double T);
  static Weight constant(double T, double t0, double T0);
  static Weight indicator(double T, double t0, double T0); // rho = 1 on [t0, T0]
  static Weight power(double T, double p);
  static Weight power(double T, double p, double t0, double T0);
  static Weight table_weight(double T, std::vector<std::pair<double, double>> pts);
  static Weight table_weight(double T, std::vector<std::pair<double, double>> pts,
                             double t0, double T0);
};

struct WeightReport {
  bool valid = true;
  std::vector<std::string> violations;
};

// Checks every class invariant; reports all violated clauses, never throws.
WeightReport validate(const Weight &w);

// Pointwise rho(theta); table kind interpolates linearly.
double eval_rho(const Weight &w, double theta);

// integral of theta^k rho(theta) over [0, upper]; closed form except for
// table kind (composite Gauss-Legendre, 8 nodes per table interval).
double moment(const Weight &w, int k, double upper);

// Left-hand side of the fine admissibility condition for alpha = 2n:
//   (d-1)/(d+2n-1) * (M(d-2,T)^2 M(2n+d,T)) / (M(d-2,T0) M(d,T0) M(2n+d-2,T0))
// with M(k,u) = moment(w,k,u). The weight satisfies the hypothesis iff < 1.
double fine_condition_ratio(const Weight &w, int d, int n);

// Ascending panel boundaries on [0, T] across which the integrand
// theta -> f(theta) rho(theta) is smooth: marker points, indicator edges,
// table abscissae. Panels where rho vanishes identically are dropped.
std::vector<double> support_cuts(const Weight &w);

} // namespace spherecap
