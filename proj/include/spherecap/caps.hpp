#pragma once

#include "spherecap/coeffs.hpp"
#include "spherecap/quadrature.hpp"
#include "spherecap/weights.hpp"

#include <array>
#include <vector>

namespace spherecap {

// xi-independent data of the generalized cap average A^rho_t: the ambient
// dimension, the weight, and the quadrature policy for all theta-integrals.
class CapAverageContext {
public:
  CapAverageContext(int d, Weight w, QuadOpts quad = {});

  int d() const { return d_; }
  double T() const { return w_.T; }
  const Weight &weight() const { return w_; }
  const QuadOpts &quad() const { return quad_; }
  double sphere_area() const { return sphere_area_; } // |S^{d-2}|

  // integral of sin^{d-2}(t theta / T) rho(theta) d theta over [0, T]
  double sin_mass(double t) const;

  // z_t = |S^{d-2}| (t/T) * sin_mass(t); fixes A^rho_t 1 = 1
  double normalizer(double t) const;

  // spectral multiplier m^rho_{l,t}: the eigenvalue of A^rho_t on degree-l
  // harmonics
  double multiplier(int l, double t) const;

  // A^rho_t(|xi - .|^{2k})(xi) = 2^k / sin_mass * integral of
  // (1 - cos(t theta/T))^k sin^{d-2}(t theta/T) rho; independent of xi
  double distance_power_average(int k, double t) const;

  // sin_mass, multiplier and A_0..A_kmax at one t in a single pass (shares
  // the mass integral; used by the remainder functionals per t-node)
  struct Profile {
    double mass = 0.0;
    double m = 0.0;
    int kmax = 0;
    std::array<double, 8> A{};
  };
  Profile profile(int l, int kmax, double t) const;

  // m^rho_{l,t} for all l = 0..lmax at one t (one recurrence pass per node)
  std::vector<double> multiplier_row(int lmax, double t) const;

  HarmonicCoeffs apply_multiplier(const HarmonicCoeffs &coeffs, double t) const;

private:
  int d_;
  Weight w_;
  QuadOpts quad_;
  std::vector<double> cuts_;
  double sphere_area_;
};

struct MultiplierTable {
  int lmax = 0;
  std::vector<double> tgrid;
  std::vector<double> values; // row-major [t][l]
  double at(int l, int it) const { return values[static_cast<std::size_t>(it) * (lmax + 1) + l]; }
};

// Parallel across t; rows are independent slots, so the serial variant is
// bitwise identical.
MultiplierTable multiplier_table(const CapAverageContext &ctx, int lmax,
                                 const std::vector<double> &tgrid);
MultiplierTable multiplier_table_serial(const CapAverageContext &ctx, int lmax,
                                        const std::vector<double> &tgrid);

// Log-spaced t-grid on [T*lo_frac, T]; asymptotics live at t -> 0.
std::vector<double> geometric_tgrid(double T, int n = 200, double lo_frac = 1e-4);

} // namespace spherecap
