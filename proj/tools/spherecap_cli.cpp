// Command-line driver: weight validation, I/J sweeps, norm-equivalence
// reports, and the direct-vs-multiplier grid cross-check.

#include "CLI11.hpp"

#include "spherecap/caps.hpp"
#include "spherecap/json_io.hpp"
#include "spherecap/quadrature.hpp"
#include "spherecap/remainders.hpp"
#include "spherecap/sobolev.hpp"
#include "spherecap/sphere2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_bad_weight = 2;
constexpr int exit_quadrature = 3;
constexpr int exit_wrong_branch = 4;
constexpr int exit_d_mismatch = 5;
constexpr int exit_oracle = 6;

double unit_double(std::mt19937_64 &rng) {
  // top 53 bits, identical on every platform
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

spherecap::Weight load_weight_or_exit(const std::string &path) {
  try {
    return spherecap::load_weight(path);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    std::exit(exit_bad_weight);
  }
}

std::vector<int> half_octave_grid(int lmin, int lmax) {
  std::vector<int> ls;
  double v = lmin;
  while (std::lround(v) < lmax) {
    int l = static_cast<int>(std::lround(v));
    if (ls.empty() || ls.back() != l) ls.push_back(l);
    v *= std::numbers::sqrt2;
  }
  if (ls.empty() || ls.back() != lmax) ls.push_back(lmax);
  return ls;
}

int run_weights_check(const std::string &weight_path, const std::vector<int> &ds,
                      const std::vector<int> &ns) {
  spherecap::Weight w = load_weight_or_exit(weight_path);
  spherecap::WeightReport rep = spherecap::validate(w);
  if (!rep.valid) {
    std::cout << "weight: INVALID\n";
    for (const auto &v : rep.violations) std::cout << "  violation: " << v << "\n";
    return exit_bad_weight;
  }
  std::cout << "weight: valid (" << spherecap::to_string(w.kind) << ", T=" << w.T
            << ", t0=" << w.t0 << ", T0=" << w.T0 << ")\n";
  for (int d : ds)
    for (int n : ns) {
      char line[160];
      try {
        double r = spherecap::fine_condition_ratio(w, d, n);
        std::snprintf(line, sizeof line, "fine condition d=%d n=%d ratio=%.12g %s", d, n, r,
                      r < 1.0 ? "satisfies" : "fails");
        std::cout << line << "\n";
      } catch (const std::exception &e) {
        std::cout << "fine condition d=" << d << " n=" << n << " unavailable: " << e.what()
                  << "\n";
      }
    }
  return exit_ok;
}

struct SweepArgs {
  std::string mode = "I";
  std::string weight_path;
  int d = 3;
  double alpha = 1.0;
  int n = 1;
  int lmin = 16;
  int lmax = 256;
  std::string out;
  std::string format = "csv";
};

int run_sweep_cmd(const SweepArgs &a) {
  spherecap::Weight w = load_weight_or_exit(a.weight_path);
  spherecap::SweepMode mode =
      a.mode == "J" ? spherecap::SweepMode::J : spherecap::SweepMode::I;
  int n = a.n;
  double alpha = a.alpha;
  if (mode == spherecap::SweepMode::I) {
    if (!(alpha > 0.0)) {
      std::cerr << "error: --alpha must be positive\n";
      return exit_wrong_branch;
    }
    double half = alpha / 2.0;
    long r = std::lround(half);
    if (r >= 1 && std::abs(half - static_cast<double>(r)) <= 1e-12) {
      std::cerr << "error: alpha = " << alpha
                << " is an even integer; that branch uses the corrected deviation. "
                   "Run --mode J --n "
                << r << "\n";
      return exit_wrong_branch;
    }
    n = static_cast<int>(std::floor(half));
  } else if (n < 1) {
    std::cerr << "error: --mode J requires --n >= 1\n";
    return exit_wrong_branch;
  } else {
    alpha = 2.0 * n;
  }

  try {
    spherecap::CapAverageContext ctx(a.d, w);
    spherecap::SweepResult r =
        spherecap::sweep(ctx, mode, alpha, n, half_octave_grid(a.lmin, a.lmax));
    if (a.format == "json") {
      spherecap::save_json(a.out, spherecap::sweep_to_json(r));
    } else if (a.out.empty() || a.out == "-") {
      spherecap::write_sweep_csv(r, std::cout);
    } else {
      std::ofstream os(a.out);
      if (!os) {
        std::cerr << "error: cannot open output file: " << a.out << "\n";
        return 1;
      }
      spherecap::write_sweep_csv(r, os);
    }
    std::cerr << "slope=" << r.slope << " over l in [" << r.window_lo << ", " << r.window_hi
              << "]\n";
    for (const auto &f : r.flags) std::cerr << "note: " << f << "\n";
    return r.partial ? exit_quadrature : exit_ok;
  } catch (const spherecap::numeric_error &e) {
    std::cerr << "quadrature failure: " << e.what() << "\n";
    return exit_quadrature;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_bad_weight;
  }
}

struct EquivalenceArgs {
  std::string weight_path;
  std::string coeffs_path;
  int d = 3;
  double alpha = 1.0;
  std::string out;
};

int run_equivalence(const EquivalenceArgs &a) {
  spherecap::Weight w = load_weight_or_exit(a.weight_path);
  spherecap::HarmonicCoeffs c;
  try {
    c = spherecap::load_coeffs(a.coeffs_path);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (c.d != a.d) {
    std::cerr << "error: coefficient file has d=" << c.d << " but the run requests d=" << a.d
              << "\n";
    return exit_d_mismatch;
  }
  try {
    spherecap::CapAverageContext ctx(a.d, w);
    spherecap::NormReport rep = spherecap::equivalence_report(c, a.alpha, ctx);
    spherecap::save_json(a.out, spherecap::report_to_json(rep));
    return exit_ok;
  } catch (const spherecap::numeric_error &e) {
    std::cerr << "quadrature failure: " << e.what() << "\n";
    return exit_quadrature;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_bad_weight;
  }
}

struct OracleArgs {
  std::string weight_path;
  int d = 3;
  int band = 16;
  unsigned long long seed = 12345;
};

int run_oracle_compare(const OracleArgs &a) {
  if (a.d != 3) {
    std::cerr << "error: the grid oracle is implemented for d = 3 only\n";
    return exit_d_mismatch;
  }
  spherecap::Weight w = a.weight_path.empty()
                            ? spherecap::Weight::constant(std::numbers::pi)
                            : load_weight_or_exit(a.weight_path);
  try {
    spherecap::CapAverageContext ctx(3, w);
    spherecap::SphericalGrid grid = spherecap::make_spherical_grid(a.band);
    std::mt19937_64 rng(a.seed);

    spherecap::HarmonicCoeffs f = spherecap::HarmonicCoeffs::zeros(3, a.band);
    for (auto &block : f.blocks)
      for (auto &z : block) z = 2.0 * unit_double(rng) - 1.0;

    std::vector<spherecap::Vec3> xis;
    for (int i = 0; i < 5; ++i) {
      double z = 2.0 * unit_double(rng) - 1.0;
      double phi = 2.0 * std::numbers::pi * unit_double(rng);
      double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      xis.push_back({s * std::cos(phi), s * std::sin(phi), z});
    }

    double t_lo = 0.2, t_hi = 0.95 * w.T;
    double worst = 0.0, worst_t = 0.0;
    int worst_l = 0, worst_xi = 0;
    bool warned = false;
    for (int it = 0; it < 10; ++it) {
      double t = t_lo * std::pow(t_hi / t_lo, it / 9.0);
      if (t < 2.0 * std::numbers::pi / a.band && !warned) {
        std::cout << "note: cap radius " << t << " is below the grid resolution "
                  << 2.0 * std::numbers::pi / a.band << "; direct quadrature may be coarse\n";
        warned = true;
      }
      std::vector<double> mrow = ctx.multiplier_row(a.band, t);
      for (std::size_t ix = 0; ix < xis.size(); ++ix) {
        std::vector<double> direct =
            spherecap::cap_average_by_degree(grid, f, xis[ix], t, w);
        double th = std::acos(std::clamp(xis[ix][2], -1.0, 1.0));
        double ph = std::atan2(xis[ix][1], xis[ix][0]);
        for (int l = 0; l <= a.band; ++l) {
          spherecap::HarmonicCoeffs only = spherecap::HarmonicCoeffs::zeros(3, a.band);
          only.blocks[l] = f.blocks[l];
          double spectral = mrow[l] * spherecap::synthesis_at(only, th, ph);
          double diff = std::abs(direct[l] - spectral);
          if (diff > worst) {
            worst = diff;
            worst_t = t;
            worst_l = l;
            worst_xi = static_cast<int>(ix);
          }
        }
      }
    }
    char line[200];
    std::snprintf(line, sizeof line,
                  "max |direct - multiplier| = %.3e at (l=%d, t=%.6g, xi#%d)", worst, worst_l,
                  worst_t, worst_xi);
    std::cout << line << "\n";
    if (worst <= 1e-6) {
      std::cout << "PASS (threshold 1e-06)\n";
      return exit_ok;
    }
    std::cout << "FAIL (threshold 1e-06)\n";
    return exit_oracle;
  } catch (const spherecap::numeric_error &e) {
    std::cerr << "quadrature failure: " << e.what() << "\n";
    return exit_quadrature;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_bad_weight;
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"weighted cap averages and square functions on the sphere"};
  app.require_subcommand(1);

  std::string wc_weight;
  std::vector<int> wc_ds{3};
  std::vector<int> wc_ns{1};
  CLI::App *wc = app.add_subcommand("weights-check",
                                    "validate a weight file and report fine-condition ratios");
  wc->add_option("--weight", wc_weight, "weight JSON file")->required();
  wc->add_option("--d", wc_ds, "ambient dimensions to check");
  wc->add_option("--n", wc_ns, "orders to check");

  SweepArgs sa;
  CLI::App *sw = app.add_subcommand("sweep", "I or J values over a degree grid");
  sw->add_option("--mode", sa.mode, "I or J")->check(CLI::IsMember({"I", "J"}));
  sw->add_option("--weight", sa.weight_path, "weight JSON file")->required();
  sw->add_option("--d", sa.d, "ambient dimension");
  sw->add_option("--alpha", sa.alpha, "smoothness order (I mode)");
  sw->add_option("--n", sa.n, "integer order (J mode)");
  sw->add_option("--lmin", sa.lmin, "smallest degree");
  sw->add_option("--lmax", sa.lmax, "largest degree");
  sw->add_option("--out", sa.out, "output path (default stdout)");
  sw->add_option("--format", sa.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  EquivalenceArgs ea;
  CLI::App *eq = app.add_subcommand("equivalence", "norm-equivalence report for a coefficient file");
  eq->add_option("--weight", ea.weight_path, "weight JSON file")->required();
  eq->add_option("--coeffs", ea.coeffs_path, "coefficient JSON file")->required();
  eq->add_option("--d", ea.d, "ambient dimension");
  eq->add_option("--alpha", ea.alpha, "smoothness order")->required();
  eq->add_option("--out", ea.out, "output path (default stdout)");

  OracleArgs oa;
  CLI::App *oc = app.add_subcommand("oracle-compare",
                                    "direct cap quadrature vs multiplier action on a random function");
  oc->add_option("--weight", oa.weight_path, "weight JSON file (default: constant on [0, pi])");
  oc->add_option("--d", oa.d, "ambient dimension (must be 3)");
  oc->add_option("--band", oa.band, "band limit of the test function");
  oc->add_option("--seed", oa.seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  if (wc->parsed()) return run_weights_check(wc_weight, wc_ds, wc_ns);
  if (sw->parsed()) return run_sweep_cmd(sa);
  if (eq->parsed()) return run_equivalence(ea);
  if (oc->parsed()) return run_oracle_compare(oa);
  return 0;
}
