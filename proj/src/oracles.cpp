#include "spherecap/oracles.hpp"

#include "spherecap/legendre.hpp"
#include "spherecap/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace spherecap {

double legendre_explicit_sum(int d, int l, double s) {
  if (d < 2 || l < 0) throw std::domain_error("legendre_explicit_sum: need d >= 2, l >= 0");
  if (!(s >= -1.0 && s <= 1.0))
    throw std::domain_error("legendre_explicit_sum: s must lie in [-1, 1]");
  double nu = (d - 1.0) / 2.0;
  double lead = std::lgamma(l + 1.0) + std::lgamma(nu);
  double one_minus_s2 = (1.0 - s) * (1.0 + s);
  Accum sum;
  for (int k = 0; 2 * k <= l; ++k) {
    double ln_mag = lead - k * std::log(4.0) - std::lgamma(k + 1.0) -
                    std::lgamma(l - 2 * k + 1.0) - std::lgamma(k + nu);
    double term = std::exp(ln_mag) * std::pow(one_minus_s2, k) * std::pow(s, l - 2 * k);
    sum.add((k % 2 == 0) ? term : -term);
  }
  return sum.total();
}

double uniform_cap_multiplier(int l, double t) {
  if (l < 0) throw std::domain_error("uniform_cap_multiplier: l must be >= 0");
  if (!(t > 0.0 && t <= std::acos(-1.0)))
    throw std::domain_error("uniform_cap_multiplier: t must lie in (0, pi]");
  if (l == 0) return 1.0;
  double c = std::cos(t);
  double half = std::sin(0.5 * t);
  double denom = (2.0 * l + 1.0) * 2.0 * half * half;
  return (eval_P(3, l - 1, c) - eval_P(3, l + 1, c)) / denom;
}

double uniform_cap_mass_d3(double t) {
  double half = std::sin(0.5 * t);
  return 4.0 * std::acos(-1.0) * half * half;
}

double uniform_first_moment_d3(double t) { return 0.5 * (1.0 + std::cos(t)); }

double uniform_distance_avg_d3(double t) {
  double half = std::sin(0.5 * t);
  return 2.0 * half * half;
}

double uniform_N11_d3(double t) {
  double a = uniform_distance_avg_d3(t);
  return -0.25 * a * a;
}

double indicator_fine_ratio_closed(int d, int n, double r) {
  if (d < 2 || n < 1)
    throw std::invalid_argument("indicator_fine_ratio_closed: need d >= 2, n >= 1");
  if (!(r > 0.0 && r < 1.0))
    throw std::domain_error("indicator_fine_ratio_closed: r must lie in (0, 1)");
  double num = 1.0 + std::pow(r, 2 * n + 2 * d) - std::pow(r, 2 * n + d + 1) -
               std::pow(r, d - 1);
  double den = 1.0 + std::pow(r, 2 * n + 2 * d) - std::pow(r, 2 * n + d - 1) -
               std::pow(r, d + 1);
  return (d + 1.0) / (2.0 * n + d + 1.0) * num / den;
}

} // namespace spherecap
