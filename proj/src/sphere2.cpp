#include "spherecap/sphere2.hpp"

#include "spherecap/legendre.hpp"
#include "spherecap/parallel.hpp"
#include "spherecap/quadrature.hpp"
#include "spherecap/remainders.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spherecap {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

unsigned long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long b = 1;
  for (int j = 1; j <= k; ++j) b = b * static_cast<unsigned long long>(n - k + j) / j;
  return b;
}

std::size_t plm_index(int l, int m) {
  return static_cast<std::size_t>(l) * (l + 1) / 2 + m;
}

void check_sphere_coeffs(const HarmonicCoeffs &c, const char *who) {
  if (c.d != 3) throw std::invalid_argument(std::string(who) + ": coefficients must have d = 3");
  if (c.L < 0 || c.blocks.size() != static_cast<std::size_t>(c.L) + 1)
    throw std::invalid_argument(std::string(who) + ": malformed coefficient blocks");
  for (int l = 0; l <= c.L; ++l)
    if (c.blocks[l].size() != static_cast<std::size_t>(2 * l + 1))
      throw std::invalid_argument(std::string(who) + ": block " + std::to_string(l) +
                                  " has wrong length");
}

// Real-basis view; rejects coefficients with meaningful imaginary parts,
// since the grid basis cannot represent them.
std::vector<double> real_flat(const HarmonicCoeffs &c, const char *who) {
  check_sphere_coeffs(c, who);
  double scale = std::sqrt(c.sq_norm());
  double tol = 1e-13 * std::max(1.0, scale);
  std::vector<double> flat(static_cast<std::size_t>(c.L + 1) * (c.L + 1));
  std::size_t k = 0;
  for (const auto &block : c.blocks)
    for (const auto &z : block) {
      if (std::abs(z.imag()) > tol)
        throw std::invalid_argument(std::string(who) +
                                    ": coefficients have non-negligible imaginary parts");
      flat[k++] = z.real();
    }
  return flat;
}

// One row of the real orthonormal basis at (theta, phi), flat index l^2 + j.
void y_row(int L, double theta, double phi, std::vector<double> &plm, double *out) {
  normalized_plm(L, std::cos(theta), plm.data());
  const double sqrt2 = std::numbers::sqrt2;
  for (int l = 0; l <= L; ++l) {
    double *row = out + static_cast<std::size_t>(l) * l;
    row[0] = plm[plm_index(l, 0)];
    for (int m = 1; m <= l; ++m) {
      double p = sqrt2 * plm[plm_index(l, m)];
      row[2 * m - 1] = p * std::cos(m * phi);
      row[2 * m] = p * std::sin(m * phi);
    }
  }
}

double dot_flat(const std::vector<double> &a, const std::vector<double> &b) {
  Accum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
  return s.total();
}

Vec3 cap_point(const std::array<Vec3, 3> &frame, double tp, double pp) {
  double st = std::sin(tp), ct = std::cos(tp);
  double a = st * std::cos(pp), b = st * std::sin(pp);
  Vec3 p;
  for (int i = 0; i < 3; ++i)
    p[i] = a * frame[0][i] + b * frame[1][i] + ct * frame[2][i];
  return p;
}

void angles_of(const Vec3 &p, double &theta, double &phi) {
  theta = std::acos(std::clamp(p[2], -1.0, 1.0));
  phi = std::atan2(p[1], p[0]);
}

// theta' panel edges for a cap of radius t: weight breakpoints pulled back
// through theta = T theta'/t.
std::vector<double> cap_cuts(double t, const Weight &w) {
  std::vector<double> cuts{0.0, t};
  for (double mark : {w.t0 * t / w.T, w.T0 * t / w.T})
    if (mark > 0.0 && mark < t) cuts.push_back(mark);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-15; }),
             cuts.end());
  return cuts;
}

void check_cap_args(const Weight &w, double t, const char *who) {
  WeightReport rep = validate(w);
  if (!rep.valid) {
    std::string msg = std::string(who) + ": invalid weight";
    for (const auto &v : rep.violations) msg += "; " + v;
    throw std::invalid_argument(msg);
  }
  if (!(t > 0.0) || t > w.T)
    throw std::domain_error(std::string(who) + ": cap radius must lie in (0, T]");
}

} // namespace

int harmonic_dim(int d, int l) {
  if (d < 2 || l < 0) throw std::domain_error("harmonic_dim: need d >= 2 and l >= 0");
  if (l == 0) return 1;
  if (d == 2) return 2;
  // nu = binom(l+d-2, d-2) + binom(l+d-3, d-2), both exact in 64-bit here
  return static_cast<int>(binom(l + d - 2, d - 2) + binom(l + d - 3, d - 2));
}

HarmonicCoeffs HarmonicCoeffs::zeros(int d, int L) {
  if (L < 0) throw std::domain_error("HarmonicCoeffs::zeros: L must be >= 0");
  HarmonicCoeffs c;
  c.d = d;
  c.L = L;
  c.blocks.resize(L + 1);
  for (int l = 0; l <= L; ++l)
    c.blocks[l].assign(harmonic_dim(d, l), std::complex<double>(0.0, 0.0));
  return c;
}

double HarmonicCoeffs::sq_norm() const {
  Accum s;
  for (const auto &block : blocks)
    for (const auto &z : block) s.add(std::norm(z));
  return s.total();
}

SphericalGrid make_spherical_grid(int L) {
  if (L < 0) throw std::invalid_argument("make_spherical_grid: L must be >= 0");
  SphericalGrid g;
  g.L = L;
  const GaussRule &r = gauss_rule(L + 1);
  g.x = r.x;
  g.wx = r.w;
  g.theta.resize(g.x.size());
  for (std::size_t i = 0; i < g.x.size(); ++i) g.theta[i] = std::acos(g.x[i]);
  g.nphi = 2 * L + 1;
  g.phi.resize(g.nphi);
  for (int j = 0; j < g.nphi; ++j) g.phi[j] = two_pi * j / g.nphi;
  return g;
}

void normalized_plm(int L, double x, double *out) {
  if (!(x >= -1.0 && x <= 1.0))
    throw std::domain_error("normalized_plm: x must lie in [-1, 1]");
  double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  out[plm_index(0, 0)] = std::sqrt(1.0 / (4.0 * std::numbers::pi));
  for (int m = 1; m <= L; ++m)
    out[plm_index(m, m)] =
        out[plm_index(m - 1, m - 1)] * s * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
  for (int m = 0; m < L; ++m)
    out[plm_index(m + 1, m)] = x * std::sqrt(2.0 * m + 3.0) * out[plm_index(m, m)];
  for (int m = 0; m <= L; ++m)
    for (int l = m + 2; l <= L; ++l) {
      double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - m * m) /
                           (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
      out[plm_index(l, m)] =
          a * (x * out[plm_index(l - 1, m)] - b * out[plm_index(l - 2, m)]);
    }
}

HarmonicCoeffs analysis(const SphericalGrid &g, const std::vector<double> &samples) {
  std::size_t expect = static_cast<std::size_t>(g.L + 1) * g.nphi;
  if (samples.size() != expect)
    throw std::invalid_argument("analysis: expected " + std::to_string(expect) + " samples");
  int L = g.L;
  HarmonicCoeffs c = HarmonicCoeffs::zeros(3, L);
  std::vector<double> plm(plm_index(L, L) + 1);
  std::vector<double> fc(L + 1), fs(L + 1);
  for (int i = 0; i <= L; ++i) {
    const double *row = samples.data() + static_cast<std::size_t>(i) * g.nphi;
    for (int m = 0; m <= L; ++m) {
      Accum ac, as;
      for (int j = 0; j < g.nphi; ++j) {
        ac.add(row[j] * std::cos(m * g.phi[j]));
        as.add(row[j] * std::sin(m * g.phi[j]));
      }
      fc[m] = two_pi / g.nphi * ac.total();
      fs[m] = two_pi / g.nphi * as.total();
    }
    normalized_plm(L, g.x[i], plm.data());
    const double sqrt2 = std::numbers::sqrt2;
    for (int l = 0; l <= L; ++l) {
      c.blocks[l][0] += g.wx[i] * plm[plm_index(l, 0)] * fc[0];
      for (int m = 1; m <= l; ++m) {
        double p = g.wx[i] * sqrt2 * plm[plm_index(l, m)];
        c.blocks[l][2 * m - 1] += p * fc[m];
        c.blocks[l][2 * m] += p * fs[m];
      }
    }
  }
  return c;
}

std::vector<double> synthesis(const HarmonicCoeffs &c, const SphericalGrid &g) {
  std::vector<double> flat = real_flat(c, "synthesis");
  if (c.L > g.L)
    throw std::invalid_argument("synthesis: grid band limit below coefficient band limit");
  int L = c.L;
  std::vector<double> out(static_cast<std::size_t>(g.L + 1) * g.nphi, 0.0);
  std::vector<double> plm(plm_index(L, L) + 1);
  std::vector<double> zc(L + 1), zs(L + 1);
  const double sqrt2 = std::numbers::sqrt2;
  for (int i = 0; i <= g.L; ++i) {
    normalized_plm(L, g.x[i], plm.data());
    for (int m = 0; m <= L; ++m) {
      Accum ac, as;
      for (int l = m; l <= L; ++l) {
        double p = plm[plm_index(l, m)];
        const double *block = flat.data() + static_cast<std::size_t>(l) * l;
        if (m == 0) {
          ac.add(block[0] * p);
        } else {
          ac.add(block[2 * m - 1] * sqrt2 * p);
          as.add(block[2 * m] * sqrt2 * p);
        }
      }
      zc[m] = ac.total();
      zs[m] = as.total();
    }
    double *row = out.data() + static_cast<std::size_t>(i) * g.nphi;
    for (int j = 0; j < g.nphi; ++j) {
      Accum v;
      v.add(zc[0]);
      for (int m = 1; m <= L; ++m)
        v.add(zc[m] * std::cos(m * g.phi[j]) + zs[m] * std::sin(m * g.phi[j]));
      row[j] = v.total();
    }
  }
  return out;
}

double synthesis_at(const HarmonicCoeffs &c, double theta, double phi) {
  std::vector<double> flat = real_flat(c, "synthesis_at");
  std::vector<double> plm(plm_index(c.L, c.L) + 1);
  std::vector<double> y(flat.size());
  y_row(c.L, theta, phi, plm, y.data());
  return dot_flat(flat, y);
}

std::array<Vec3, 3> frame_at(const Vec3 &xi) {
  double norm = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw std::invalid_argument("frame_at: direction must be a nonzero vector");
  Vec3 e3{xi[0] / norm, xi[1] / norm, xi[2] / norm};
  Vec3 u = std::abs(e3[2]) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
  Vec3 e1{u[1] * e3[2] - u[2] * e3[1], u[2] * e3[0] - u[0] * e3[2],
          u[0] * e3[1] - u[1] * e3[0]};
  double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (double &v : e1) v /= n1;
  Vec3 e2{e3[1] * e1[2] - e3[2] * e1[1], e3[2] * e1[0] - e3[0] * e1[2],
          e3[0] * e1[1] - e3[1] * e1[0]};
  return {e1, e2, e3};
}

CapDirect cap_average_direct(const SphericalGrid &g, const std::vector<double> &samples,
                             const Vec3 &xi, double t, const Weight &w) {
  return cap_average_direct(g, analysis(g, samples), xi, t, w);
}

CapDirect cap_average_direct(const SphericalGrid &g, const HarmonicCoeffs &c, const Vec3 &xi,
                             double t, const Weight &w) {
  check_cap_args(w, t, "cap_average_direct");
  std::vector<double> flat = real_flat(c, "cap_average_direct");
  auto frame = frame_at(xi);
  std::vector<double> cuts = cap_cuts(t, w);
  const GaussRule &rule = gauss_rule(64);
  int L = c.L;
  std::vector<double> plm(plm_index(L, L) + 1), y(flat.size());
  Accum num, den;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    double mid = 0.5 * (cuts[p] + cuts[p + 1]), half = 0.5 * (cuts[p + 1] - cuts[p]);
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      double tp = mid + half * rule.x[q];
      double base = half * rule.w[q] * std::sin(tp) * eval_rho(w, std::min(w.T, w.T * tp / t));
      if (base == 0.0) continue;
      den.add(base);
      Accum favg;
      for (int j = 0; j < g.nphi; ++j) {
        double th, ph;
        angles_of(cap_point(frame, tp, g.phi[j]), th, ph);
        y_row(L, th, ph, plm, y.data());
        favg.add(dot_flat(flat, y));
      }
      num.add(base * favg.total() / g.nphi);
    }
  }
  double mass = den.total();
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw numeric_error("cap_average_direct: cap quadrature mass vanished", mass);
  CapDirect out;
  out.value = num.total() / mass;
  out.resolution_warning = t < two_pi / std::max(1, g.L);
  return out;
}

std::vector<double> cap_average_by_degree(const SphericalGrid &g, const HarmonicCoeffs &c,
                                          const Vec3 &xi, double t, const Weight &w) {
  check_cap_args(w, t, "cap_average_by_degree");
  std::vector<double> flat = real_flat(c, "cap_average_by_degree");
  auto frame = frame_at(xi);
  std::vector<double> cuts = cap_cuts(t, w);
  const GaussRule &rule = gauss_rule(64);
  int L = c.L;
  std::vector<double> plm(plm_index(L, L) + 1), y(flat.size());
  std::vector<Accum> num(L + 1);
  Accum den;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    double mid = 0.5 * (cuts[p] + cuts[p + 1]), half = 0.5 * (cuts[p + 1] - cuts[p]);
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      double tp = mid + half * rule.x[q];
      double base = half * rule.w[q] * std::sin(tp) * eval_rho(w, std::min(w.T, w.T * tp / t));
      if (base == 0.0) continue;
      den.add(base);
      for (int j = 0; j < g.nphi; ++j) {
        double th, ph;
        angles_of(cap_point(frame, tp, g.phi[j]), th, ph);
        y_row(L, th, ph, plm, y.data());
        for (int l = 0; l <= L; ++l) {
          const double *block = flat.data() + static_cast<std::size_t>(l) * l;
          const double *yb = y.data() + static_cast<std::size_t>(l) * l;
          Accum s;
          for (int j2 = 0; j2 < 2 * l + 1; ++j2) s.add(block[j2] * yb[j2]);
          num[l].add(base * s.total() / g.nphi);
        }
      }
    }
  }
  double mass = den.total();
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw numeric_error("cap_average_by_degree: cap quadrature mass vanished", mass);
  std::vector<double> out(L + 1);
  for (int l = 0; l <= L; ++l) out[l] = num[l].total() / mass;
  return out;
}

namespace {

struct TNodes {
  std::vector<double> t;
  std::vector<double> w; // panel weight times t^{-2 alpha}
  double t_min = 0.0;
};

// Log-substituted nodes for the dt/t^{2 alpha + 1} integral over (0, T],
// panel length capped by the expected oscillation scale of degree-lphase
// multipliers.
TNodes build_tnodes(double T, int lphase, double alpha) {
  TNodes n;
  lphase = std::max(lphase, 1);
  n.t_min = T * std::min(1e-6, std::pow(static_cast<double>(lphase), -4.0));
  double u_max = std::log(T / n.t_min);
  const GaussRule &rule = gauss_rule(20);
  double u = 0.0;
  while (u < u_max) {
    double t_here = T * std::exp(-u);
    double du = std::min({0.5, 12.0 / (lphase * t_here), u_max - u});
    double mid = u + 0.5 * du, half = 0.5 * du;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      double uq = mid + half * rule.x[q];
      double tq = T * std::exp(-uq);
      n.t.push_back(tq);
      n.w.push_back(half * rule.w[q] * std::pow(tq, -2.0 * alpha));
    }
    u += du;
  }
  return n;
}

struct SquareBranch {
  int n = 0;
  bool even = false; // alpha = 2n, corrections end with the multiplier-damped term
};

SquareBranch square_branch(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("square function: alpha must be positive");
  SquareBranch b;
  double half = alpha / 2.0;
  long r = std::lround(half);
  if (r >= 1 && std::abs(half - static_cast<double>(r)) <= 1e-12) {
    b.n = static_cast<int>(r);
    b.even = true;
  } else {
    b.n = static_cast<int>(std::floor(half));
  }
  return b;
}

// Per-degree deviation scales at radius t: the deviation coefficient is
// u[l] fhat_{lj} + sum_k v[k][l] ghat_{k,lj}.
void deviation_scales(const CapAverageContext &ctx, int L, double t, const SquareBranch &b,
                      std::vector<double> &u, std::vector<std::vector<double>> &v) {
  u.assign(L + 1, 0.0);
  std::vector<double> row;
  if (t * L > 1.0) row = ctx.multiplier_row(L, t);
  for (int l = 1; l <= L; ++l)
    u[l] = t * l <= 1.0 ? M_via_remainder(ctx, 0, l, t) : row[l] - 1.0;
  v.assign(b.n, std::vector<double>(L + 1, 0.0));
  for (int k = 1; k <= b.n; ++k) {
    double a = ctx.distance_power_average(k, t);
    if (b.even && k == b.n) {
      for (int l = 0; l <= L; ++l) v[k - 1][l] = -a * (l == 0 ? 1.0 : u[l] + 1.0);
    } else {
      for (int l = 0; l <= L; ++l) v[k - 1][l] = -a;
    }
  }
}

void fold_deviation(const HarmonicCoeffs &f, const std::vector<HarmonicCoeffs> &gs,
                    const std::vector<double> &u, const std::vector<std::vector<double>> &v,
                    std::complex<double> *out) {
  std::size_t idx = 0;
  for (int l = 0; l <= f.L; ++l)
    for (int j = 0; j < 2 * l + 1; ++j, ++idx) {
      std::complex<double> h = u[l] * f.blocks[l][j];
      for (std::size_t k = 0; k < gs.size(); ++k) h += v[k][l] * gs[k].blocks[l][j];
      out[idx] = h;
    }
}

std::vector<double> square_function_at(const HarmonicCoeffs &f, double alpha,
                                       const CapAverageContext &ctx,
                                       const std::vector<HarmonicCoeffs> &gs,
                                       const std::vector<std::pair<double, double>> &points,
                                       bool parallel) {
  if (ctx.d() != 3)
    throw std::invalid_argument("square function: the grid oracle requires d = 3");
  check_sphere_coeffs(f, "square function");
  SquareBranch b = square_branch(alpha);
  if (gs.size() != static_cast<std::size_t>(b.n))
    throw std::invalid_argument("square function: expected " + std::to_string(b.n) +
                                " correction functions for alpha = " + std::to_string(alpha));
  for (const auto &g : gs) {
    check_sphere_coeffs(g, "square function");
    if (g.L != f.L)
      throw std::invalid_argument("square function: correction band limit differs from f");
  }

  int L = f.L;
  std::size_t ncoef = static_cast<std::size_t>(L + 1) * (L + 1);
  TNodes nodes = build_tnodes(ctx.T(), L, alpha);
  std::size_t nt = nodes.t.size();

  // deviation coefficients for every t node, plus one row at t_min for the
  // analytic small-t tail
  std::vector<std::complex<double>> h((nt + 1) * ncoef);
  std::vector<double> u;
  std::vector<std::vector<double>> v;
  for (std::size_t q = 0; q < nt; ++q) {
    deviation_scales(ctx, L, nodes.t[q], b, u, v);
    fold_deviation(f, gs, u, v, h.data() + q * ncoef);
  }
  deviation_scales(ctx, L, nodes.t_min, b, u, v);
  fold_deviation(f, gs, u, v, h.data() + nt * ncoef);

  // tail of the deviation decays like t^{2n+2}, so the clipped integral
  // contributes |D(t_min)|^2 t_min^{-2 alpha} / q_exp
  double q_exp = 4.0 * (b.n + 1) - 2.0 * alpha;
  double tail_scale = std::pow(nodes.t_min, -2.0 * alpha) / q_exp;

  std::vector<double> out(points.size(), 0.0);
  parallel_for(static_cast<int>(points.size()), parallel, [&](int i) {
    std::vector<double> plm(plm_index(L, L) + 1), y(ncoef);
    y_row(L, points[i].first, points[i].second, plm, y.data());
    Accum s;
    for (std::size_t q = 0; q <= nt; ++q) {
      const std::complex<double> *hq = h.data() + q * ncoef;
      Accum dre, dim;
      for (std::size_t k = 0; k < ncoef; ++k) {
        dre.add(hq[k].real() * y[k]);
        dim.add(hq[k].imag() * y[k]);
      }
      double d2 = dre.total() * dre.total() + dim.total() * dim.total();
      s.add(d2 * (q < nt ? nodes.w[q] : tail_scale));
    }
    out[i] = s.total();
  });
  return out;
}

} // namespace

double square_function_pointwise(const HarmonicCoeffs &f, double theta, double phi,
                                 double alpha, const CapAverageContext &ctx,
                                 const std::vector<HarmonicCoeffs> &gs) {
  return square_function_at(f, alpha, ctx, gs, {{theta, phi}}, false)[0];
}

std::vector<double> square_function_grid(const SphericalGrid &g, const HarmonicCoeffs &f,
                                         double alpha, const CapAverageContext &ctx,
                                         const std::vector<HarmonicCoeffs> &gs) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(g.L + 1) * g.nphi);
  for (int i = 0; i <= g.L; ++i)
    for (int j = 0; j < g.nphi; ++j) pts.emplace_back(g.theta[i], g.phi[j]);
  return square_function_at(f, alpha, ctx, gs, pts, true);
}

} // namespace spherecap
