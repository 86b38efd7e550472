#include "spherecap/weights.hpp"

#include "spherecap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spherecap {

namespace {

constexpr double pi = std::numbers::pi;

void default_markers(Weight &w) {
  w.t0 = w.T / 4.0;
  w.T0 = std::min(0.75 * w.T, 0.99 * pi);
}

// rho restricted to [t0, T0] integrates to > 0? Uses the same closed forms
// as moment() but never throws, so validate() can report instead of abort.
double mass_between(const Weight &w, double a, double b) {
  switch (w.kind) {
    case WeightKind::constant:
      return b - a;
    case WeightKind::indicator: {
      double lo = std::max(a, w.t0), hi = std::min(b, w.T0);
      return std::max(0.0, hi - lo);
    }
    case WeightKind::power:
      return (std::pow(b, w.p + 1) - std::pow(a, w.p + 1)) / (w.p + 1);
    case WeightKind::table: {
      // trapezoid on the table nodes clipped to [a, b]; exact for the
      // piecewise-linear rho
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < w.table.size(); ++i) {
        double x0 = w.table[i].first, x1 = w.table[i + 1].first;
        double lo = std::max(a, x0), hi = std::min(b, x1);
        if (hi <= lo || x1 <= x0) continue;
        auto rho_at = [&](double x) {
          double t = (x - x0) / (x1 - x0);
          return (1 - t) * w.table[i].second + t * w.table[i + 1].second;
        };
        s += 0.5 * (rho_at(lo) + rho_at(hi)) * (hi - lo);
      }
      return s;
    }
  }
  return 0.0;
}

} // namespace

const char *to_string(WeightKind k) {
  switch (k) {
    case WeightKind::constant: return "constant";
    case WeightKind::indicator: return "indicator";
    case WeightKind::power: return "power";
    case WeightKind::table: return "table";
  }
  return "?";
}

Weight Weight::constant(double T) {
  Weight w;
  w.kind = WeightKind::constant;
  w.T = T;
  default_markers(w);
  return w;
}

Weight Weight::constant(double T, double t0, double T0) {
  Weight w = constant(T);
  w.t0 = t0;
  w.T0 = T0;
  return w;
}

Weight Weight::indicator(double T, double t0, double T0) {
  Weight w;
  w.kind = WeightKind::indicator;
  w.T = T;
  w.t0 = t0;
  w.T0 = T0;
  return w;
}

Weight Weight::power(double T, double p) {
  Weight w;
  w.kind = WeightKind::power;
  w.T = T;
  w.p = p;
  default_markers(w);
  return w;
}

Weight Weight::power(double T, double p, double t0, double T0) {
  Weight w = power(T, p);
  w.t0 = t0;
  w.T0 = T0;
  return w;
}

Weight Weight::table_weight(double T, std::vector<std::pair<double, double>> pts) {
  Weight w;
  w.kind = WeightKind::table;
  w.T = T;
  w.table = std::move(pts);
  default_markers(w);
  return w;
}

Weight Weight::table_weight(double T, std::vector<std::pair<double, double>> pts,
                            double t0, double T0) {
  Weight w = table_weight(T, std::move(pts));
  w.t0 = t0;
  w.T0 = T0;
  return w;
}

WeightReport validate(const Weight &w) {
  WeightReport r;
  auto fail = [&](const std::string &clause) {
    r.valid = false;
    r.violations.push_back(clause);
  };
  if (!(w.T > 0.0 && w.T <= pi)) fail("T must lie in (0, pi]");
  if (!(0.0 < w.t0 && w.t0 < w.T0 && w.T0 <= w.T)) fail("markers must satisfy 0 < t0 < T0 <= T");
  if (!(w.T0 < pi)) fail("T0 must be < pi");
  if (w.kind == WeightKind::power && !(w.p >= 0.0)) fail("power exponent must be >= 0");
  if (w.kind == WeightKind::table) {
    if (w.table.size() < 2) fail("table must have at least two points");
    bool sorted = true, in_range = true, nonneg = true, finite = true;
    for (std::size_t i = 0; i < w.table.size(); ++i) {
      if (i > 0 && !(w.table[i].first > w.table[i - 1].first)) sorted = false;
      if (!(w.table[i].first >= 0.0 && w.table[i].first <= w.T)) in_range = false;
      if (!(w.table[i].second >= 0.0)) nonneg = false;
      if (!std::isfinite(w.table[i].first) || !std::isfinite(w.table[i].second)) finite = false;
    }
    if (!sorted) fail("table abscissae must be strictly increasing");
    if (!in_range) fail("table abscissae must lie in [0, T]");
    if (!nonneg) fail("table values must be nonnegative");
    if (!finite) fail("table entries must be finite");
  }
  if (r.valid && !(mass_between(w, w.t0, w.T0) > 0.0))
    fail("weight must have positive mass on [t0, T0]");
  return r;
}

double eval_rho(const Weight &w, double theta) {
  if (!(theta >= 0.0 && theta <= w.T))
    throw std::domain_error("eval_rho: theta outside [0, T]");
  switch (w.kind) {
    case WeightKind::constant:
      return 1.0;
    case WeightKind::indicator:
      return (theta >= w.t0 && theta <= w.T0) ? 1.0 : 0.0;
    case WeightKind::power:
      return std::pow(theta, w.p);
    case WeightKind::table: {
      if (w.table.empty() || theta < w.table.front().first || theta > w.table.back().first)
        return 0.0;
      auto it = std::upper_bound(w.table.begin(), w.table.end(), theta,
                                 [](double v, const auto &e) { return v < e.first; });
      if (it == w.table.begin()) return w.table.front().second;
      if (it == w.table.end()) return w.table.back().second;
      auto lo = *(it - 1);
      auto hi = *it;
      double t = (theta - lo.first) / (hi.first - lo.first);
      return (1 - t) * lo.second + t * hi.second;
    }
  }
  return 0.0;
}

double moment(const Weight &w, int k, double upper) {
  if (k < 0) throw std::domain_error("moment: order must be >= 0");
  if (!(upper > 0.0 && upper <= w.T)) throw std::domain_error("moment: upper must lie in (0, T]");
  switch (w.kind) {
    case WeightKind::constant:
      return std::pow(upper, k + 1) / (k + 1);
    case WeightKind::indicator: {
      if (upper <= w.t0) return 0.0;
      double hi = std::min(upper, w.T0);
      return (std::pow(hi, k + 1) - std::pow(w.t0, k + 1)) / (k + 1);
    }
    case WeightKind::power:
      return std::pow(upper, k + w.p + 1) / (k + w.p + 1);
    case WeightKind::table: {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < w.table.size(); ++i) {
        double a = w.table[i].first, b = std::min(w.table[i + 1].first, upper);
        if (b <= a) continue;
        s += gauss_panel([&](double th) { return std::pow(th, k) * eval_rho(w, th); },
                         a, b, 8, nullptr);
      }
      return s;
    }
  }
  return 0.0;
}

double fine_condition_ratio(const Weight &w, int d, int n) {
  if (d < 2) throw std::invalid_argument("fine_condition_ratio: d must be >= 2");
  if (n < 1) throw std::invalid_argument("fine_condition_ratio: n must be >= 1");
  const double num1 = moment(w, d - 2, w.T);
  const double num2 = moment(w, 2 * n + d, w.T);
  const double den1 = moment(w, d - 2, w.T0);
  const double den2 = moment(w, d, w.T0);
  const double den3 = moment(w, 2 * n + d - 2, w.T0);
  if (!(den1 > 0.0) || !(den2 > 0.0) || !(den3 > 0.0))
    throw std::domain_error("fine_condition_ratio: degenerate weight (zero moment on [0, T0])");
  return (d - 1.0) / (d + 2.0 * n - 1.0) * (num1 * num1 * num2) / (den1 * den2 * den3);
}

std::vector<double> support_cuts(const Weight &w) {
  std::vector<double> cuts;
  if (w.kind == WeightKind::indicator) {
    cuts = {w.t0, std::min(w.T0, w.T)};
  } else if (w.kind == WeightKind::table) {
    cuts.push_back(0.0);
    for (const auto &e : w.table)
      if (e.first > 0.0 && e.first < w.T) cuts.push_back(e.first);
    cuts.push_back(w.t0);
    cuts.push_back(w.T0);
    cuts.push_back(w.T);
  } else {
    cuts = {0.0, w.t0, w.T0, w.T};
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-15; }),
             cuts.end());
  return cuts;
}

} // namespace spherecap
