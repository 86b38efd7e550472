#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spherecap {

// Thrown when an adaptive quadrature fails to converge; carries the best
// estimate reached so callers can report partial results.
class numeric_error : public std::runtime_error {
public:
  numeric_error(const std::string &msg, double achieved_estimate)
      : std::runtime_error(msg), achieved(achieved_estimate) {}
  double achieved;
};

struct GaussRule {
  std::vector<double> x; // nodes on [-1, 1]
  std::vector<double> w;
};

// Cached Gauss-Legendre rule of n points; thread-safe.
const GaussRule &gauss_rule(int n);

struct QuadOpts {
  int base_nodes = 64;
  double rtol = 1e-12;
  int max_doublings = 4;
  // extra absolute acceptance for integrands that cancel per node below the
  // scale the refinement difference can see; callers set it to eps times the
  // pre-cancellation magnitude
  double abs_floor = 0.0;
};

// Compensated (Neumaier) accumulator. Oscillatory cap integrals cancel to
// many digits below the integrand scale, so plain summation wastes the
// accuracy the node counts pay for.
struct Accum {
  double s = 0.0, c = 0.0;
  void add(double v) {
    double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  double total() const { return s + c; }
};

// integral of f over one panel [a, b] with an n-point rule; also accumulates
// sum of |w f| into abs_out for roundoff-floor estimation.
template <class F>
double gauss_panel(F &&f, double a, double b, int n, double *abs_out) {
  const GaussRule &r = gauss_rule(n);
  const double h = 0.5 * (b - a), mid = 0.5 * (a + b);
  Accum acc;
  double ab = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = r.w[i] * f(mid + h * r.x[i]);
    acc.add(v);
    ab += std::abs(v);
  }
  if (abs_out) *abs_out += std::abs(h) * ab;
  return h * acc.total();
}

// Composite Gauss-Legendre over the panels defined by `cuts` (ascending),
// doubling the per-panel node count until two successive estimates agree to
// opt.rtol relative, or to the roundoff floor of the absolute integral.
// Throws numeric_error with the last estimate if refinement is exhausted.
template <class F>
double integrate_panels(F &&f, const std::vector<double> &cuts, const QuadOpts &opt = {}) {
  if (cuts.size() < 2) throw std::invalid_argument("integrate_panels: need at least one panel");
  double prev = std::numeric_limits<double>::quiet_NaN();
  int n = opt.base_nodes;
  for (int pass = 0; pass <= opt.max_doublings; ++pass, n *= 2) {
    Accum acc;
    double abs_int = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p)
      acc.add(gauss_panel(f, cuts[p], cuts[p + 1], n, &abs_int));
    double cur = acc.total();
    if (pass > 0) {
      double diff = std::abs(cur - prev);
      double floor_scale = 64.0 * std::numeric_limits<double>::epsilon() * abs_int;
      if (diff <= opt.rtol * std::abs(cur) || diff <= floor_scale || diff <= opt.abs_floor)
        return cur;
    }
    prev = cur;
  }
  throw numeric_error("quadrature did not converge after " +
                          std::to_string(opt.max_doublings) + " refinements",
                      prev);
}

} // namespace spherecap
