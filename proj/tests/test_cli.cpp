// End-to-end checks for the command line tool. argv[1] is the binary path;
// scratch files are written to the working directory.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

int g_failures = 0;

void expect(bool ok, const std::string &what) {
  if (!ok) {
    ++g_failures;
    std::cerr << "FAILED: " << what << "\n";
  }
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path);
  out << text;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string &cmd) {
  int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

double number_after(const std::string &text, const std::string &key) {
  auto pos = text.find(key);
  if (pos == std::string::npos) return -1e300;
  return std::strtod(text.c_str() + pos + key.size(), nullptr);
}

} // namespace

int main(int argc, char **argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-cli>\n";
    return 2;
  }
  std::string cli = std::string("\"") + argv[1] + "\"";

  write_file("clitest_ind.json",
             R"({"kind": "indicator", "T": 3.0, "t0": 1.5, "T0": 3.0})");
  write_file("clitest_bad.json",
             R"({"kind": "indicator", "T": 3.0, "t0": 2.5, "T0": 1.0})");
  write_file("clitest_const.json", R"({"kind": "constant", "T": 3.141592653589793})");
  write_file("clitest_y1.json", R"({"d": 3, "L": 1, "blocks": [[0], [0, 1, 0]]})");
  write_file("clitest_d4.json", R"({"d": 4, "L": 1, "blocks": [[1], [0, 0, 0, 1]]})");

  // valid weight report with the half-support indicator ratio
  int rc = run(cli + " weights-check --weight clitest_ind.json > clitest_wc.txt 2>&1");
  expect(rc == 0, "weights-check exit code, got " + std::to_string(rc));
  {
    std::string out = slurp("clitest_wc.txt");
    expect(out.find("valid") != std::string::npos, "weights-check reports valid");
    expect(out.find("satisfies") != std::string::npos, "weights-check fine condition verdict");
    expect(out.find("0.56") != std::string::npos, "weights-check shows the d=3 n=1 ratio");
  }

  rc = run(cli + " weights-check --weight clitest_bad.json > clitest_wcbad.txt 2>&1");
  expect(rc == 2, "invalid weight exits 2, got " + std::to_string(rc));

  // short sweep, csv output
  rc = run(cli + " sweep --weight clitest_const.json --d 3 --mode I --alpha 1"
                 " --lmin 8 --lmax 32 --out clitest_sweep.csv > clitest_sw.txt 2>&1");
  expect(rc == 0, "sweep exit code, got " + std::to_string(rc));
  {
    std::string csv = slurp("clitest_sweep.csv");
    expect(csv.find("l,value,normalized") != std::string::npos, "sweep csv header");
    double slope = number_after(csv, "# slope=");
    expect(slope > 1.5 && slope < 2.5,
           "sweep slope near 2, got " + std::to_string(slope));
  }

  // even alpha must be routed to the J mode
  rc = run(cli + " sweep --weight clitest_const.json --d 3 --mode I --alpha 2"
                 " --lmin 8 --lmax 16 > clitest_sw2.txt 2>&1");
  expect(rc == 4, "even alpha in I mode exits 4, got " + std::to_string(rc));
  expect(slurp("clitest_sw2.txt").find("--mode J") != std::string::npos,
         "even alpha failure suggests the J mode");

  // equivalence report on a first-degree harmonic
  rc = run(cli + " equivalence --coeffs clitest_y1.json --weight clitest_const.json"
                 " --d 3 --alpha 1 --out clitest_rep.json > clitest_eq.txt 2>&1");
  expect(rc == 0, "equivalence exit code, got " + std::to_string(rc));
  {
    std::string rep = slurp("clitest_rep.json");
    double ratio = number_after(rep, "\"ratio\":");
    expect(std::abs(ratio - 13.634822969740536) < 1e-3,
           "equivalence ratio for the first harmonic, got " + std::to_string(ratio));
    expect(rep.find("\"fractional\"") != std::string::npos, "fractional branch label");
  }

  // dimension mismatch between coeffs file and flag
  rc = run(cli + " equivalence --coeffs clitest_d4.json --weight clitest_const.json"
                 " --d 3 --alpha 1 > clitest_mism.txt 2>&1");
  expect(rc == 5, "dimension mismatch exits 5, got " + std::to_string(rc));

  // self check against the direct grid evaluation
  rc = run(cli + " oracle-compare --band 12 > clitest_oc.txt 2>&1");
  expect(rc == 0, "oracle-compare exit code, got " + std::to_string(rc));
  expect(slurp("clitest_oc.txt").find("PASS") != std::string::npos,
         "oracle-compare prints PASS");

  for (const char *f :
       {"clitest_ind.json", "clitest_bad.json", "clitest_const.json", "clitest_y1.json",
        "clitest_d4.json", "clitest_wc.txt", "clitest_wcbad.txt", "clitest_sweep.csv",
        "clitest_sw.txt", "clitest_sw2.txt", "clitest_rep.json", "clitest_eq.txt",
        "clitest_mism.txt", "clitest_oc.txt"})
    std::remove(f);

  if (g_failures == 0) {
    std::cout << "cli: all checks passed\n";
    return 0;
  }
  std::cout << "cli: " << g_failures << " check(s) failed\n";
  return 1;
}
