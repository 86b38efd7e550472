#pragma once

namespace spherecap {

// Independent closed forms used as test oracles. Each is computed by a
// different route than the production code path it checks.

// P_{l,d}(s) by the explicit finite sum
//   l! Gamma((d-1)/2) sum_k (-1)^k (1-s^2)^k s^{l-2k} / (4^k k! (l-2k)! Gamma(k+(d-1)/2)),
// numerically trustworthy for small l only.
double legendre_explicit_sum(int d, int l, double s);

// Cap multiplier for d = 3, rho == 1, T arbitrary: the Legendre
// antiderivative gives m_{l,t} = (P_{l-1} - P_{l+1})(cos t) / ((2l+1)(1 - cos t)).
double uniform_cap_multiplier(int l, double t);

// d = 3 uniform-weight cap quantities.
double uniform_cap_mass_d3(double t);       // z_t = 2 pi (1 - cos t)
double uniform_first_moment_d3(double t);   // m_{1,t} = (1 + cos t)/2
double uniform_distance_avg_d3(double t);   // A_1 = 1 - cos t
double uniform_N11_d3(double t);            // N_{1,1,t} = -(1 - cos t)^2 / 4

// Fine-condition ratio of the indicator weight with T0 = T, r = t0/T0,
// reduced to a rational function of r.
double indicator_fine_ratio_closed(int d, int n, double r);

} // namespace spherecap
