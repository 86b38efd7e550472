// Times the parallel kernels against their serial reference twins and
// checks that the results agree bitwise (rows are written to disjoint
// slots, so scheduling cannot change the arithmetic).

#include "CLI11.hpp"

#include "spherecap/caps.hpp"
#include "spherecap/parallel.hpp"
#include "spherecap/remainders.hpp"

#include <chrono>
#include <cstdio>
#include <numbers>
#include <vector>

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

void report(const char *name, double serial, double parallel, bool identical) {
  std::printf("%-18s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n", name, serial,
              parallel, serial / parallel, identical ? "bitwise-equal" : "MISMATCH");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"parallel vs serial kernel timings"};
  int d = 3;
  int lmax = 96;
  int nt = 48;
  int sweep_lmax = 91;
  app.add_option("--d", d, "ambient dimension");
  app.add_option("--lmax", lmax, "multiplier table band");
  app.add_option("--nt", nt, "multiplier table t-grid size");
  app.add_option("--sweep-lmax", sweep_lmax, "largest degree of the timing sweep");
  CLI11_PARSE(app, argc, argv);

  using clock = std::chrono::steady_clock;
  spherecap::CapAverageContext ctx(d, spherecap::Weight::constant(std::numbers::pi));
  std::printf("threads available: %d\n", spherecap::max_threads());

  {
    std::vector<double> tgrid = spherecap::geometric_tgrid(ctx.T(), nt);
    auto t0 = clock::now();
    spherecap::MultiplierTable ser = spherecap::multiplier_table_serial(ctx, lmax, tgrid);
    auto t1 = clock::now();
    spherecap::MultiplierTable par = spherecap::multiplier_table(ctx, lmax, tgrid);
    auto t2 = clock::now();
    report("multiplier_table", seconds(t0, t1), seconds(t1, t2), ser.values == par.values);
  }

  {
    std::vector<int> ls;
    for (int l = 8; l <= sweep_lmax; l = l * 3 / 2 + 1) ls.push_back(l);
    auto t0 = clock::now();
    spherecap::SweepResult ser =
        spherecap::sweep_serial(ctx, spherecap::SweepMode::I, 1.0, 0, ls);
    auto t1 = clock::now();
    spherecap::SweepResult par = spherecap::sweep(ctx, spherecap::SweepMode::I, 1.0, 0, ls);
    auto t2 = clock::now();
    bool same = ser.rows.size() == par.rows.size();
    for (std::size_t i = 0; same && i < ser.rows.size(); ++i)
      same = ser.rows[i].value == par.rows[i].value;
    report("sweep(I, alpha=1)", seconds(t0, t1), seconds(t1, t2), same);
  }
  return 0;
}
