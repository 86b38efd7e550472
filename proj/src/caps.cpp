#include "spherecap/caps.hpp"

#include "spherecap/legendre.hpp"
#include "spherecap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace spherecap {

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

void check_t(double t, double T) {
  if (!(t > 0.0 && t <= T)) throw std::domain_error("cap average: t must lie in (0, T]");
}

} // namespace

CapAverageContext::CapAverageContext(int d, Weight w, QuadOpts quad)
    : d_(d), w_(std::move(w)), quad_(quad) {
  if (d_ < 2) throw std::invalid_argument("CapAverageContext: dimension must be >= 2");
  if (quad_.base_nodes < 16) throw std::invalid_argument("CapAverageContext: need >= 16 quadrature nodes");
  WeightReport rep = validate(w_);
  if (!rep.valid) {
    std::ostringstream msg;
    msg << "CapAverageContext: invalid weight";
    for (const auto &v : rep.violations) msg << "; " << v;
    throw std::invalid_argument(msg.str());
  }
  cuts_ = support_cuts(w_);
  // |S^{d-2}| = 2 pi^{(d-1)/2} / Gamma((d-1)/2)
  sphere_area_ = 2.0 * std::pow(std::numbers::pi, 0.5 * (d_ - 1)) / std::tgamma(0.5 * (d_ - 1));
}

double CapAverageContext::sin_mass(double t) const {
  check_t(t, w_.T);
  const double scale = t / w_.T;
  return integrate_panels(
      [&](double th) { return ipow(std::sin(scale * th), d_ - 2) * eval_rho(w_, th); },
      cuts_, quad_);
}

double CapAverageContext::normalizer(double t) const {
  return sphere_area_ * (t / w_.T) * sin_mass(t);
}

double CapAverageContext::multiplier(int l, double t) const {
  check_t(t, w_.T);
  if (l < 0) throw std::domain_error("multiplier: degree must be >= 0");
  if (l == 0) return 1.0;
  const double scale = t / w_.T;
  double num = integrate_panels(
      [&](double th) {
        double x = scale * th;
        return eval_P(d_, l, std::cos(x)) * ipow(std::sin(x), d_ - 2) * eval_rho(w_, th);
      },
      cuts_, quad_);
  return num / sin_mass(t);
}

double CapAverageContext::distance_power_average(int k, double t) const {
  check_t(t, w_.T);
  if (k < 0) throw std::domain_error("distance_power_average: k must be >= 0");
  if (k == 0) return 1.0;
  const double scale = t / w_.T;
  double num = integrate_panels(
      [&](double th) {
        double x = scale * th;
        double ss = std::sin(0.5 * x);
        return ipow(2.0 * ss * ss, k) * ipow(std::sin(x), d_ - 2) * eval_rho(w_, th);
      },
      cuts_, quad_);
  return std::ldexp(num, k) / sin_mass(t); // 2^k * num / mass
}

CapAverageContext::Profile CapAverageContext::profile(int l, int kmax, double t) const {
  if (kmax < 0 || kmax >= 8) throw std::invalid_argument("profile: kmax must lie in [0, 7]");
  Profile pr;
  pr.kmax = kmax;
  pr.mass = sin_mass(t);
  pr.m = (l == 0) ? 1.0 : multiplier(l, t);
  pr.A[0] = 1.0;
  for (int k = 1; k <= kmax; ++k) pr.A[k] = distance_power_average(k, t);
  return pr;
}

std::vector<double> CapAverageContext::multiplier_row(int lmax, double t) const {
  check_t(t, w_.T);
  if (lmax < 0) throw std::domain_error("multiplier_row: lmax must be >= 0");
  const double scale = t / w_.T;
  std::vector<double> prev;
  std::vector<double> P(lmax + 1);
  int n = quad_.base_nodes;
  for (int pass = 0; pass <= quad_.max_doublings; ++pass, n *= 2) {
    std::vector<Accum> acc(lmax + 1);
    double abs_mass = 0.0;
    const GaussRule &rule = gauss_rule(n);
    for (std::size_t p = 0; p + 1 < cuts_.size(); ++p) {
      const double h = 0.5 * (cuts_[p + 1] - cuts_[p]);
      const double mid = 0.5 * (cuts_[p] + cuts_[p + 1]);
      for (int i = 0; i < n; ++i) {
        const double th = mid + h * rule.x[i];
        const double x = scale * th;
        const double base = h * rule.w[i] * ipow(std::sin(x), d_ - 2) * eval_rho(w_, th);
        abs_mass += std::abs(base);
        eval_P_row(d_, lmax, std::cos(x), P.data());
        for (int l = 0; l <= lmax; ++l) acc[l].add(base * P[l]);
      }
    }
    std::vector<double> cur(lmax + 1);
    for (int l = 0; l <= lmax; ++l) cur[l] = acc[l].total();
    if (pass > 0) {
      const double floor_scale = 64.0 * std::numeric_limits<double>::epsilon() * abs_mass;
      bool ok = true;
      for (int l = 0; l <= lmax && ok; ++l) {
        double diff = std::abs(cur[l] - prev[l]);
        if (diff > quad_.rtol * std::abs(cur[l]) && diff > floor_scale) ok = false;
      }
      if (ok) {
        for (int l = lmax; l >= 0; --l) cur[l] /= cur[0];
        return cur;
      }
    }
    prev = std::move(cur);
  }
  throw numeric_error("multiplier_row: quadrature did not converge", prev.empty() ? 0.0 : prev[0]);
}

HarmonicCoeffs CapAverageContext::apply_multiplier(const HarmonicCoeffs &coeffs, double t) const {
  if (coeffs.d != d_)
    throw std::invalid_argument("apply_multiplier: coefficient dimension mismatch");
  std::vector<double> m = multiplier_row(coeffs.L, t);
  HarmonicCoeffs out = coeffs;
  for (int l = 0; l <= coeffs.L; ++l)
    for (auto &c : out.blocks[l]) c *= m[l];
  return out;
}

namespace {

MultiplierTable build_table(const CapAverageContext &ctx, int lmax,
                            const std::vector<double> &tgrid, bool parallel) {
  MultiplierTable tab;
  tab.lmax = lmax;
  tab.tgrid = tgrid;
  tab.values.resize(tgrid.size() * static_cast<std::size_t>(lmax + 1));
  parallel_for(static_cast<int>(tgrid.size()), parallel, [&](int it) {
    std::vector<double> row = ctx.multiplier_row(lmax, tgrid[it]);
    std::copy(row.begin(), row.end(),
              tab.values.begin() + static_cast<std::size_t>(it) * (lmax + 1));
  });
  return tab;
}

} // namespace

MultiplierTable multiplier_table(const CapAverageContext &ctx, int lmax,
                                 const std::vector<double> &tgrid) {
  return build_table(ctx, lmax, tgrid, true);
}

MultiplierTable multiplier_table_serial(const CapAverageContext &ctx, int lmax,
                                        const std::vector<double> &tgrid) {
  return build_table(ctx, lmax, tgrid, false);
}

std::vector<double> geometric_tgrid(double T, int n, double lo_frac) {
  if (n < 2) throw std::invalid_argument("geometric_tgrid: need at least two points");
  std::vector<double> g(n);
  const double lo = std::log(T * lo_frac), hi = std::log(T);
  for (int i = 0; i < n; ++i) g[i] = std::exp(lo + (hi - lo) * i / (n - 1.0));
  g.back() = T;
  return g;
}

} // namespace spherecap
