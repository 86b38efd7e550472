#include "spherecap/sobolev.hpp"

#include "spherecap/legendre.hpp"
#include "spherecap/parallel.hpp"
#include "spherecap/quadrature.hpp"
#include "spherecap/remainders.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spherecap {

namespace {

void check_blocks(const HarmonicCoeffs &c, const char *who) {
  if (c.d < 2 || c.L < 0 || c.blocks.size() != static_cast<std::size_t>(c.L) + 1)
    throw std::invalid_argument(std::string(who) + ": malformed coefficient set");
}

double block_sq(const std::vector<std::complex<double>> &block) {
  Accum s;
  for (const auto &z : block) s.add(std::norm(z));
  return s.total();
}

// c_{k,l} / (2^k lambda^k); zero for l < k, uniformly bounded in l otherwise
double t_k_scale(int d, int k, int l) {
  double lam = laplace_eigenvalue(d, l);
  return std::ldexp(taylor_coeff(d, k, l), -k) / std::pow(lam, k);
}

struct Branch {
  int n = 0;
  bool even = false;
};

Branch pick_branch(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("sqnorm_coeff: alpha must be positive");
  Branch b;
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

} // namespace

double laplace_eigenvalue(int d, int l) {
  if (d < 2 || l < 0) throw std::domain_error("laplace_eigenvalue: need d >= 2 and l >= 0");
  return static_cast<double>(l) * (l + d - 2);
}

HarmonicCoeffs laplace_power(const HarmonicCoeffs &c, double beta) {
  check_blocks(c, "laplace_power");
  if (!(beta >= 0.0)) throw std::domain_error("laplace_power: beta must be >= 0");
  HarmonicCoeffs out = c;
  for (int l = 0; l <= c.L; ++l) {
    double lam = laplace_eigenvalue(c.d, l);
    double scale = (lam == 0.0 && beta == 0.0) ? 1.0 : std::pow(lam, beta);
    for (auto &z : out.blocks[l]) z *= scale;
  }
  return out;
}

double sobolev_norm(const HarmonicCoeffs &c, double alpha) {
  check_blocks(c, "sobolev_norm");
  if (!(alpha >= 0.0)) throw std::domain_error("sobolev_norm: alpha must be >= 0");
  Accum s;
  for (int l = 0; l <= c.L; ++l) {
    double lam = laplace_eigenvalue(c.d, l);
    double w = (lam == 0.0 && alpha == 0.0) ? 1.0 : std::pow(lam, alpha);
    s.add(w * block_sq(c.blocks[l]));
  }
  return s.total();
}

double halpha_norm(const HarmonicCoeffs &c, double alpha) {
  check_blocks(c, "halpha_norm");
  if (!(alpha >= 0.0)) throw std::domain_error("halpha_norm: alpha must be >= 0");
  Accum s;
  for (int l = 0; l <= c.L; ++l) {
    double w = std::pow(1.0 + std::sqrt(laplace_eigenvalue(c.d, l)), 2.0 * alpha);
    s.add(w * block_sq(c.blocks[l]));
  }
  return s.total();
}

HarmonicCoeffs T_k_apply(const HarmonicCoeffs &c, int k) {
  check_blocks(c, "T_k_apply");
  if (k < 1) throw std::invalid_argument("T_k_apply: k must be >= 1");
  HarmonicCoeffs out = c;
  for (auto &z : out.blocks[0]) z = 0.0;
  for (int l = 1; l <= c.L; ++l) {
    double scale = t_k_scale(c.d, k, l);
    for (auto &z : out.blocks[l]) z *= scale;
  }
  return out;
}

HarmonicCoeffs T_k_inverse(const HarmonicCoeffs &c, int k) {
  check_blocks(c, "T_k_inverse");
  if (k < 1) throw std::invalid_argument("T_k_inverse: k must be >= 1");
  HarmonicCoeffs out = c;
  for (auto &z : out.blocks[0]) z = 0.0;
  for (int l = 1; l <= c.L; ++l) {
    double scale = t_k_scale(c.d, k, l);
    double inv = 1.0 / scale;
    if (!std::isfinite(inv)) {
      // degrees below k are not in the range of T_k; only their absence is
      // invertible
      if (block_sq(c.blocks[l]) > 0.0)
        throw numeric_error("T_k_inverse: scale factor not invertible at l = " +
                                std::to_string(l),
                            scale);
      continue;
    }
    for (auto &z : out.blocks[l]) z *= inv;
  }
  return out;
}

HarmonicCoeffs canonical_g(const HarmonicCoeffs &c, int k) {
  check_blocks(c, "canonical_g");
  if (k < 1) throw std::invalid_argument("canonical_g: k must be >= 1");
  HarmonicCoeffs out = c;
  for (auto &z : out.blocks[0]) z = 0.0;
  for (int l = 1; l <= c.L; ++l) {
    double scale = std::ldexp(taylor_coeff(c.d, k, l), -k);
    for (auto &z : out.blocks[l]) z *= scale;
  }
  return out;
}

double sqnorm_coeff(const HarmonicCoeffs &c, double alpha, const CapAverageContext &ctx,
                    std::vector<std::string> *warnings) {
  check_blocks(c, "sqnorm_coeff");
  if (c.d != ctx.d())
    throw std::invalid_argument("sqnorm_coeff: coefficient d differs from context d");
  Branch b = pick_branch(alpha);
  if (b.even && warnings) {
    try {
      if (fine_condition_ratio(ctx.weight(), ctx.d(), b.n) >= 1.0)
        warnings->push_back("fine condition ratio >= 1; two-sided equivalence unguaranteed");
    } catch (const std::domain_error &e) {
      warnings->push_back(std::string("fine condition unavailable: ") + e.what());
    }
  }

  std::vector<int> ls;
  std::vector<double> mass;
  for (int l = 1; l <= c.L; ++l) {
    double m = block_sq(c.blocks[l]);
    if (m > 0.0) {
      ls.push_back(l);
      mass.push_back(m);
    }
  }
  std::vector<double> w(ls.size(), 0.0);
  std::vector<std::string> errs(ls.size());
  parallel_for(static_cast<int>(ls.size()), true, [&](int i) {
    try {
      w[i] = b.even ? J_integral(ctx, b.n, ls[i]) : I_integral(ctx, alpha, b.n, ls[i]);
    } catch (const std::exception &e) {
      errs[i] = e.what();
    }
  });
  Accum s;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (!errs[i].empty())
      throw numeric_error("sqnorm_coeff: degree " + std::to_string(ls[i]) + ": " + errs[i],
                          w[i]);
    s.add(w[i] * mass[i]);
  }
  return s.total();
}

HarmonicCoeffs poisson(const HarmonicCoeffs &c, double r) {
  check_blocks(c, "poisson");
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("poisson: r must lie in (0, 1)");
  HarmonicCoeffs out = c;
  double rl = 1.0;
  for (int l = 0; l <= c.L; ++l) {
    for (auto &z : out.blocks[l]) z *= rl;
    rl *= r;
  }
  return out;
}

NormReport equivalence_report(const HarmonicCoeffs &c, double alpha,
                              const CapAverageContext &ctx) {
  NormReport rep;
  rep.alpha = alpha;
  Branch b = pick_branch(alpha);
  rep.branch = b.even ? "integer-even" : "fractional";
  rep.lhs = sobolev_norm(c, alpha);
  rep.rhs = sqnorm_coeff(c, alpha, ctx, &rep.warnings);
  if (rep.rhs > 0.0) {
    rep.ratio = rep.lhs / rep.rhs;
  } else if (rep.lhs > 0.0) {
    throw std::runtime_error(
        "equivalence_report: square-function norm vanished for a nonconstant function");
  }
  return rep;
}

} // namespace spherecap
