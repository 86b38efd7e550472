#include "spherecap/remainders.hpp"

#include "spherecap/legendre.hpp"
#include "spherecap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace spherecap {

namespace {

void check_nlt(const CapAverageContext &ctx, int n, int l, double t, const char *who) {
  if (n < 0) throw std::domain_error(std::string(who) + ": n must be >= 0");
  if (l < 0) throw std::domain_error(std::string(who) + ": l must be >= 0");
  if (!(t > 0.0 && t <= ctx.T()))
    throw std::domain_error(std::string(who) + ": t must lie in (0, T]");
}

// weighted cap average of a remainder evaluated per node as a function of
// u = 2 sin^2(x/2); u is handed over exactly, which is what keeps the small-t
// regime meaningful. cancelling = the integrand values sit far below the
// O(1) quantities they are differences of, so convergence additionally
// accepts the corresponding eps-level noise floor.
template <class R>
double averaged_remainder(const CapAverageContext &ctx, double t, bool cancelling, R &&rem) {
  const double scale = t / ctx.T();
  const int d = ctx.d();
  const Weight &w = ctx.weight();
  const double mass = ctx.sin_mass(t);
  QuadOpts opt = ctx.quad();
  if (cancelling)
    opt.abs_floor = 256.0 * std::numeric_limits<double>::epsilon() * mass;
  double num = integrate_panels(
      [&](double th) {
        double x = scale * th;
        double s = std::sin(x);
        double sinpow = 1.0;
        for (int i = 0; i < d - 2; ++i) sinpow *= s;
        double ss = std::sin(0.5 * x);
        return rem(2.0 * ss * ss) * sinpow * eval_rho(w, th);
      },
      support_cuts(w), opt);
  return num / mass;
}

} // namespace

double M_via_remainder(const CapAverageContext &ctx, int n, int l, double t) {
  check_nlt(ctx, n, l, t, "M");
  if (l <= n) return 0.0;
  const int d = ctx.d();
  return averaged_remainder(ctx, t, false,
                            [&](double u) { return taylor_remainder_series(d, l, n, u); });
}

double M_via_partial(const CapAverageContext &ctx, int n, int l, double t) {
  check_nlt(ctx, n, l, t, "M");
  if (l <= n) return 0.0;
  const int d = ctx.d();
  return averaged_remainder(ctx, t, true,
                            [&](double u) { return taylor_remainder_diff(d, l, n, u); });
}

double M(const CapAverageContext &ctx, int n, int l, double t) {
  check_nlt(ctx, n, l, t, "M");
  if (l <= n) return 0.0;
  return (t * l <= 1.0) ? M_via_remainder(ctx, n, l, t) : M_via_partial(ctx, n, l, t);
}

double N(const CapAverageContext &ctx, int n, int l, double t) {
  check_nlt(ctx, n, l, t, "N");
  if (n < 1) throw std::domain_error("N: n must be >= 1");
  if (l <= n - 1) return 0.0;
  double An = ctx.distance_power_average(n, t);
  double cn = std::ldexp(taylor_coeff(ctx.d(), n, l), -n);
  return M(ctx, n, l, t) - cn * An * M(ctx, 0, l, t);
}

double N_form2(const CapAverageContext &ctx, int n, int l, double t) {
  check_nlt(ctx, n, l, t, "N");
  if (n < 1) throw std::domain_error("N: n must be >= 1");
  if (l <= n - 1) return 0.0;
  double An = ctx.distance_power_average(n, t);
  double cn = std::ldexp(taylor_coeff(ctx.d(), n, l), -n);
  double m = ctx.multiplier(l, t);
  double Mnm1 = (n - 1 >= l) ? 0.0 : M(ctx, n - 1, l, t);
  return Mnm1 - cn * An * m;
}

namespace {

// integral over (0, T] of f(t)^2 dt / t^{power+1} with f supplied per node,
// substituted as t = T e^{-u}. Panels sized so the phase l*t advances at
// most ~12 radians per panel; 20-node Gauss rule per panel. Below t_min the
// tail is added analytically from the local power law f ~ t^{q_half}.
template <class F>
double squared_t_integral(double T, int l, double power, double tail_exponent, F &&f) {
  const double t_min = T * std::min(1e-6, std::pow(static_cast<double>(std::max(l, 1)), -4.0));
  const double u_max = std::log(T / t_min);
  const GaussRule &rule = gauss_rule(20);
  Accum acc;
  double u = 0.0;
  while (u < u_max - 1e-15) {
    double t_here = T * std::exp(-u);
    double du = std::min({0.5, 12.0 / std::max(l * t_here, 1e-30), u_max - u});
    const double h = 0.5 * du, mid = u + 0.5 * du;
    for (int i = 0; i < 20; ++i) {
      double uu = mid + h * rule.x[i];
      double t = T * std::exp(-uu);
      double v = f(t);
      acc.add(h * rule.w[i] * v * v * std::pow(t, -power));
    }
    u += du;
  }
  // f ~ c t^{(tail_exponent + power)/2} near 0 makes the remaining integral
  // f(t_min)^2 t_min^{-power} / tail_exponent
  double fe = f(t_min);
  acc.add(fe * fe * std::pow(t_min, -power) / tail_exponent);
  return acc.total();
}

} // namespace

double I_integral(const CapAverageContext &ctx, double alpha, int n, int l) {
  if (n < 0) throw std::domain_error("I_integral: n must be >= 0");
  if (l < 0) throw std::domain_error("I_integral: l must be >= 0");
  if (!(2.0 * n < alpha && alpha < 2.0 * (n + 1)))
    throw std::invalid_argument(
        "I_integral: alpha must lie in (2n, 2n+2); for alpha = 2n use J_integral");
  if (l <= n) return 0.0;
  return squared_t_integral(ctx.T(), l, 2.0 * alpha, 4.0 * (n + 1) - 2.0 * alpha,
                            [&](double t) { return M(ctx, n, l, t); });
}

double J_integral(const CapAverageContext &ctx, int n, int l) {
  if (n < 1) throw std::domain_error("J_integral: n must be >= 1");
  if (l < 0) throw std::domain_error("J_integral: l must be >= 0");
  if (l <= n - 1) return 0.0;
  return squared_t_integral(ctx.T(), l, 4.0 * n, 4.0,
                            [&](double t) { return N(ctx, n, l, t); });
}

namespace {

SweepResult run_sweep(const CapAverageContext &ctx, SweepMode mode, double alpha, int n,
                      const std::vector<int> &ls, bool parallel) {
  if (ls.empty()) throw std::invalid_argument("sweep: empty l-range");
  if (ls.front() < 0) throw std::invalid_argument("sweep: degrees must be >= 0");
  for (std::size_t i = 0; i + 1 < ls.size(); ++i)
    if (ls[i] >= ls[i + 1]) throw std::invalid_argument("sweep: l-range must be ascending");
  if (mode == SweepMode::I && !(2.0 * n < alpha && alpha < 2.0 * (n + 1)))
    throw std::invalid_argument("sweep: alpha must lie in (2n, 2n+2) for an I sweep");

  SweepResult res;
  res.d = ctx.d();
  res.mode = mode;
  res.alpha = alpha;
  res.n = n;
  res.weight_id = to_string(ctx.weight().kind);
  res.rows.resize(ls.size());

  if (mode == SweepMode::J) {
    try {
      double ratio = fine_condition_ratio(ctx.weight(), ctx.d(), n);
      if (!(ratio < 1.0)) res.flags.push_back("hypothesis unmet: fine condition ratio >= 1");
    } catch (const std::domain_error &) {
      res.flags.push_back("hypothesis unmet: fine condition degenerate");
    }
  }

  const double target_power = (mode == SweepMode::I) ? 2.0 * alpha : 4.0 * n;
  parallel_for(static_cast<int>(ls.size()), parallel, [&](int i) {
    SweepRow &row = res.rows[i];
    row.l = ls[i];
    try {
      row.value = (mode == SweepMode::I) ? I_integral(ctx, alpha, n, ls[i])
                                         : J_integral(ctx, n, ls[i]);
      row.normalized = row.value / std::pow(static_cast<double>(ls[i]), target_power);
    } catch (const numeric_error &e) {
      row.failed = true;
      row.value = e.achieved;
      row.normalized = 0.0;
    }
  });
  for (const SweepRow &row : res.rows)
    if (row.failed) {
      res.partial = true;
      res.flags.push_back("partial: quadrature failure at l=" + std::to_string(row.l));
    }

  // slope over the top half of the range in log scale; degenerate zero rows
  // are excluded
  const double mid = std::sqrt(static_cast<double>(ls.front()) * ls.back()) * (1.0 - 1e-12);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (const SweepRow &row : res.rows) {
    if (row.failed || row.value <= 0.0 || row.l < mid) continue;
    double x = std::log(static_cast<double>(row.l)), y = std::log(row.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    if (cnt++ == 0) res.window_lo = row.l;
    res.window_hi = row.l;
  }
  res.slope = (cnt >= 2) ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
  return res;
}

} // namespace

SweepResult sweep(const CapAverageContext &ctx, SweepMode mode, double alpha, int n,
                  const std::vector<int> &ls) {
  return run_sweep(ctx, mode, alpha, n, ls, true);
}

SweepResult sweep_serial(const CapAverageContext &ctx, SweepMode mode, double alpha, int n,
                         const std::vector<int> &ls) {
  return run_sweep(ctx, mode, alpha, n, ls, false);
}

void write_sweep_csv(const SweepResult &r, std::ostream &os) {
  os << "l,value,normalized\n";
  char buf[128];
  for (const std::string &flag : r.flags) os << "# " << flag << "\n";
  for (const SweepRow &row : r.rows) {
    if (row.failed) continue;
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", row.l, row.value, row.normalized);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "# slope=%.17g window=[%g,%g]\n", r.slope, r.window_lo,
                r.window_hi);
  os << buf;
}

} // namespace spherecap
