#pragma once

#include "spherecap/caps.hpp"
#include "spherecap/coeffs.hpp"

#include <array>
#include <utility>
#include <vector>

namespace spherecap {

// d = 3 grid oracle: spherical-harmonic analysis/synthesis on a
// Gauss-Legendre x uniform-longitude grid, direct cap-quadrature averaging,
// and pointwise square functions. Ground truth for the multiplier-space
// paths, which remain general-d.

struct SphericalGrid {
  int L = 0;                 // band limit
  std::vector<double> x;     // Gauss-Legendre nodes in cos(theta), L+1 of them
  std::vector<double> wx;    // weights, summing to 2
  std::vector<double> theta; // acos(x)
  int nphi = 0;              // 2L+1 equispaced longitudes
  std::vector<double> phi;
};

SphericalGrid make_spherical_grid(int L);

// Real orthonormal basis with unit L^2 norm under surface measure.
// Block layout: j = 0 is m = 0; j = 2m-1, 2m are the (cos, sin) pair of
// order m. normalized_plm fills Pbar_{lm} = N_{lm} P_l^m(x) at
// index l(l+1)/2 + m, so that Y_{l0} = Pbar_{l0} and
// Y^{cos/sin}_{lm} = sqrt(2) Pbar_{lm} {cos,sin}(m phi).
void normalized_plm(int L, double x, double *out);

// Samples are row-major [i_theta * nphi + i_phi], real-valued.
HarmonicCoeffs analysis(const SphericalGrid &g, const std::vector<double> &samples);
std::vector<double> synthesis(const HarmonicCoeffs &c, const SphericalGrid &g);
double synthesis_at(const HarmonicCoeffs &c, double theta, double phi);

using Vec3 = std::array<double, 3>;

// Columns are an orthonormal frame whose third axis is xi: maps cap
// coordinates around the pole to global coordinates.
std::array<Vec3, 3> frame_at(const Vec3 &xi);

struct CapDirect {
  double value = 0.0;
  bool resolution_warning = false; // t below the grid's angular resolution 2 pi / L
};

// z_t^{-1} integral of f rho(T theta'/t) over the cap C(xi, t), by rotation
// of xi to the pole and tensor quadrature (Gauss-Legendre in theta', the
// grid's longitude count in phi). The rho-quadrature over the same nodes
// normalizes, so f == 1 averages to exactly 1.
CapDirect cap_average_direct(const SphericalGrid &g, const std::vector<double> &samples,
                             const Vec3 &xi, double t, const Weight &w);
CapDirect cap_average_direct(const SphericalGrid &g, const HarmonicCoeffs &c, const Vec3 &xi,
                             double t, const Weight &w);

// Per-degree cap averages of the degree components of c, one Legendre pass
// over the cap nodes; entry l equals cap_average_direct of the degree-l part.
std::vector<double> cap_average_by_degree(const SphericalGrid &g, const HarmonicCoeffs &c,
                                          const Vec3 &xi, double t, const Weight &w);

// Pointwise generalized square function S^{rho,T}_alpha(f, g_1..g_n)^2 at
// (theta, phi): the t-integral against dt/t^{2 alpha+1} of the squared
// deviation A_t f - f - sum_k A_t(|xi-.|^{2k}) g_k (for alpha = 2n the last
// correction enters through A_t(g_n) A_t(|xi-.|^{2n})). gs must have n
// entries where n = floor(alpha/2), or alpha/2 entries when alpha = 2n.
double square_function_pointwise(const HarmonicCoeffs &f, double theta, double phi,
                                 double alpha, const CapAverageContext &ctx,
                                 const std::vector<HarmonicCoeffs> &gs);

// Same deviation integral evaluated at every grid node (parallel across
// nodes); returns squared values row-major like samples.
std::vector<double> square_function_grid(const SphericalGrid &g, const HarmonicCoeffs &f,
                                         double alpha, const CapAverageContext &ctx,
                                         const std::vector<HarmonicCoeffs> &gs);

} // namespace spherecap
