#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spherecap/legendre.hpp"
#include "spherecap/remainders.hpp"
#include "spherecap/sobolev.hpp"
#include "spherecap/sphere2.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

using namespace spherecap;
using std::numbers::pi;

namespace {

HarmonicCoeffs random_real(int d, int L, unsigned seed) {
  std::mt19937_64 rng(seed);
  HarmonicCoeffs c = HarmonicCoeffs::zeros(d, L);
  for (auto &block : c.blocks)
    for (auto &z : block)
      z = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  return c;
}

} // namespace

TEST_CASE("laplacian eigenvalues") {
  CHECK(laplace_eigenvalue(3, 0) == 0.0);
  CHECK(laplace_eigenvalue(3, 1) == 2.0);
  CHECK(laplace_eigenvalue(3, 5) == 30.0);
  CHECK(laplace_eigenvalue(4, 2) == 8.0);
}

TEST_CASE("fractional laplacian powers") {
  HarmonicCoeffs c = HarmonicCoeffs::zeros(3, 2);
  c.blocks[0][0] = 3.0;
  c.blocks[1][1] = 1.5;
  c.blocks[2][4] = -2.0;

  HarmonicCoeffs id = laplace_power(c, 0.0);
  CHECK(id.blocks[0][0] == std::complex<double>(3.0));
  CHECK(id.blocks[2][4] == std::complex<double>(-2.0));

  HarmonicCoeffs lap = laplace_power(c, 1.0);
  CHECK(lap.blocks[0][0] == std::complex<double>(0.0)); // constants annihilated
  CHECK(lap.blocks[1][1].real() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(lap.blocks[2][4].real() == doctest::Approx(-12.0).epsilon(1e-15));

  HarmonicCoeffs half = laplace_power(c, 0.5);
  CHECK(half.blocks[1][1].real() == doctest::Approx(1.5 * std::sqrt(2.0)).epsilon(1e-15));

  CHECK_THROWS_AS(laplace_power(c, -0.5), std::domain_error);
}

TEST_CASE("homogeneous and inhomogeneous norms") {
  HarmonicCoeffs c = HarmonicCoeffs::zeros(3, 1);
  c.blocks[1][0] = 2.0;
  CHECK(sobolev_norm(c, 2.0) == doctest::Approx(16.0).epsilon(1e-15)); // lambda^2 |f|^2
  CHECK(sobolev_norm(c, 0.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(halpha_norm(c, 1.0) ==
        doctest::Approx(std::pow(1.0 + std::sqrt(2.0), 2.0) * 4.0).epsilon(1e-14));

  HarmonicCoeffs k = HarmonicCoeffs::zeros(3, 0);
  k.blocks[0][0] = 5.0;
  CHECK(sobolev_norm(k, 1.5) == 0.0);   // homogeneous norm kills constants
  CHECK(halpha_norm(k, 1.5) == 25.0);   // inhomogeneous one keeps them
}

TEST_CASE("first-order correction operator has exact dyadic scale in three dimensions") {
  // d=3, k=1: block scale is c_{1,l} / 2 / lambda_l = -1/4 for every l >= 1
  HarmonicCoeffs c = HarmonicCoeffs::zeros(3, 3);
  c.blocks[1][2] = 1.0;
  c.blocks[3][0] = -3.0;
  HarmonicCoeffs out = T_k_apply(c, 1);
  CHECK(out.blocks[1][2].real() == -0.25);
  CHECK(out.blocks[3][0].real() == 0.75);
}

TEST_CASE("correction operator inverts cleanly away from its kernel") {
  HarmonicCoeffs c = random_real(4, 6, 3);
  c.blocks[0][0] = 0.0; // T_k kernel: degree zero
  for (int k : {1, 2}) {
    HarmonicCoeffs cc = c;
    for (int l = 0; l < k; ++l) std::fill(cc.blocks[l].begin(), cc.blocks[l].end(), 0.0);
    HarmonicCoeffs back = T_k_inverse(T_k_apply(cc, k), k);
    for (int l = 0; l <= 6; ++l)
      for (std::size_t j = 0; j < cc.blocks[l].size(); ++j)
        CHECK(std::abs(back.blocks[l][j] - cc.blocks[l][j]) <= 1e-12 * (1.0 + std::abs(cc.blocks[l][j])));
  }
}

TEST_CASE("inverting over a populated kernel block is an error") {
  HarmonicCoeffs c = HarmonicCoeffs::zeros(3, 2);
  c.blocks[1][0] = 1.0; // degree 1 < k = 2, scale vanishes
  c.blocks[2][0] = 1.0;
  CHECK_THROWS_AS(T_k_inverse(c, 2), numeric_error);
  c.blocks[1][0] = 0.0;
  CHECK_NOTHROW(T_k_inverse(c, 2));
}

TEST_CASE("correction scales stay bounded over a long degree ladder") {
  // |scale(k, l)| should stay within fixed brackets; blowup would mean the
  // normalization drifted.
  for (int d : {3, 4})
    for (int k : {1, 2, 3}) {
      double lo = 1e300, hi = 0.0;
      for (int l : {k, 8, 64, 512}) {
        HarmonicCoeffs probe = HarmonicCoeffs::zeros(d, l);
        probe.blocks[l][0] = 1.0;
        double s = std::abs(T_k_apply(probe, k).blocks[l][0]);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      CHECK(hi <= 1.0);
      CHECK(lo >= 1.0 / std::pow(32.0, k));
    }
}

TEST_CASE("canonical corrections scale blocks by the taylor ratio") {
  HarmonicCoeffs c = HarmonicCoeffs::zeros(3, 2);
  c.blocks[2][1] = 2.0;
  HarmonicCoeffs g1 = canonical_g(c, 1);
  // c_{1,2} = -lambda_2 / 2 = -3, over 2^1
  CHECK(g1.blocks[2][1].real() == doctest::Approx(-3.0).epsilon(1e-15));
  HarmonicCoeffs g2 = canonical_g(c, 2);
  CHECK(g2.blocks[2][1].real() ==
        doctest::Approx(2.0 * taylor_coeff(3, 2, 2) / 4.0).epsilon(1e-15));
  CHECK_THROWS_AS(canonical_g(c, 0), std::invalid_argument);
}

TEST_CASE("poisson smoothing") {
  HarmonicCoeffs c = HarmonicCoeffs::zeros(3, 3);
  c.blocks[0][0] = 1.0;
  c.blocks[3][4] = 2.0;
  HarmonicCoeffs p = poisson(c, 0.5);
  CHECK(p.blocks[0][0].real() == 1.0);
  CHECK(p.blocks[3][4].real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p.sq_norm() <= c.sq_norm());
  CHECK_THROWS_AS(poisson(c, 0.0), std::domain_error);
  CHECK_THROWS_AS(poisson(c, 1.0), std::domain_error);
}

TEST_CASE("poisson commutes with cap averaging") {
  HarmonicCoeffs c = random_real(3, 8, 21);
  CapAverageContext ctx(3, Weight::indicator(pi, 0.8, 2.4));
  HarmonicCoeffs a = ctx.apply_multiplier(poisson(c, 0.9), 0.7);
  HarmonicCoeffs b = poisson(ctx.apply_multiplier(c, 0.7), 0.9);
  for (int l = 0; l <= 8; ++l)
    for (std::size_t j = 0; j < a.blocks[l].size(); ++j)
      CHECK(std::abs(a.blocks[l][j] - b.blocks[l][j]) <= 1e-12);
}

TEST_CASE("coefficient-side square norm on a single harmonic") {
  CapAverageContext ctx(3, Weight::constant(pi));
  HarmonicCoeffs c = HarmonicCoeffs::zeros(3, 1);
  c.blocks[1][0] = 3.0;
  CHECK(sqnorm_coeff(c, 1.0, ctx) ==
        doctest::Approx(9.0 * 0.14668334676701033).epsilon(1e-11));
  HarmonicCoeffs k = HarmonicCoeffs::zeros(3, 0);
  k.blocks[0][0] = 7.0;
  CHECK(sqnorm_coeff(k, 1.0, ctx) == 0.0); // constants see no deviation
}

TEST_CASE("equivalence report for the first nonconstant degree") {
  CapAverageContext ctx(3, Weight::constant(pi));
  HarmonicCoeffs c = HarmonicCoeffs::zeros(3, 1);
  c.blocks[1][0] = 1.0;

  NormReport r = equivalence_report(c, 1.0, ctx);
  CHECK(r.branch == "fractional");
  CHECK(r.lhs == doctest::Approx(2.0).epsilon(1e-14)); // lambda_1^1
  CHECK(r.ratio == doctest::Approx(2.0 / 0.14668334676701033).epsilon(1e-10));
  CHECK(r.warnings.empty());

  NormReport r2 = equivalence_report(c, 2.0, ctx);
  CHECK(r2.branch == "integer-even");
  CHECK(r2.lhs == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(r2.rhs == doctest::Approx(0.013624051980472663).epsilon(1e-10));
}

TEST_CASE("equivalence ratio is scale invariant") {
  CapAverageContext ctx(3, Weight::indicator(pi, 0.8, 2.4));
  std::mt19937_64 rng(99);
  double base = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    HarmonicCoeffs c = HarmonicCoeffs::zeros(3, 6);
    for (auto &z : c.blocks[4]) z = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    double scale = std::exp(4.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 2.0);
    for (auto &z : c.blocks[4]) z *= scale;
    NormReport r = equivalence_report(c, 1.5, ctx);
    if (rep == 0)
      base = r.ratio;
    else
      CHECK(r.ratio == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("failing fine condition surfaces as a warning") {
  CapAverageContext ctx(3, Weight::constant(3.0, 0.01, 0.02));
  HarmonicCoeffs c = HarmonicCoeffs::zeros(3, 2);
  c.blocks[2][0] = 1.0;
  NormReport r = equivalence_report(c, 2.0, ctx);
  REQUIRE_FALSE(r.warnings.empty());
  bool found = false;
  for (const auto &w : r.warnings)
    if (w.find("fine condition") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("smoothing does not increase the pointwise square function") {
  // Subordination: the smoothed deviation is an average of rotated deviations,
  // so on shared quadrature nodes the smoothed square function is dominated by
  // the smoothed pointwise bound.
  CapAverageContext ctx(3, Weight::constant(pi));
  SphericalGrid g = make_spherical_grid(64);
  HarmonicCoeffs f = random_real(3, 16, 2026);
  double r = 0.9;

  std::vector<double> s2 = square_function_grid(g, f, 1.0, ctx, {});
  std::vector<double> s(s2.size());
  for (std::size_t i = 0; i < s2.size(); ++i) s[i] = std::sqrt(s2[i]);
  HarmonicCoeffs s_hat = analysis(g, s);
  HarmonicCoeffs rhs_coef = poisson(s_hat, r);

  HarmonicCoeffs pf = poisson(f, r);
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    double theta = std::acos(2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0);
    double phi = 2.0 * pi * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    double lhs = std::sqrt(square_function_pointwise(pf, theta, phi, 1.0, ctx, {}));
    double rhs = synthesis_at(rhs_coef, theta, phi);
    CHECK(lhs <= rhs + 1e-6);
  }
}
