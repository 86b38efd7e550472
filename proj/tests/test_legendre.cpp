#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spherecap/legendre.hpp"
#include "spherecap/oracles.hpp"

#include <cmath>
#include <vector>

using namespace spherecap;

namespace {
const std::vector<double> s_grid = {-1.0, -0.9, -0.5, -0.123, 0.0, 0.3, 0.7071, 0.99, 1.0};
}

TEST_CASE("d=2 reduces to Chebyshev") {
  for (int l : {0, 1, 2, 5, 17, 64})
    for (double s : s_grid) {
      double expect = std::cos(l * std::acos(s));
      CHECK(std::abs(eval_P(2, l, s) - expect) <= 1e-12);
    }
}

TEST_CASE("explicit sum oracle, small degrees") {
  for (int d = 2; d <= 6; ++d)
    for (int l = 0; l <= 10; ++l)
      for (double s : s_grid) {
        double got = eval_P(d, l, s);
        double want = legendre_explicit_sum(d, l, s);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
      }
}

TEST_CASE("classical d=3 polynomials") {
  for (double s : s_grid) {
    CHECK(eval_P(3, 2, s) == doctest::Approx(0.5 * (3 * s * s - 1)).epsilon(1e-14));
    CHECK(eval_P(3, 3, s) == doctest::Approx(0.5 * (5 * s * s * s - 3 * s)).epsilon(1e-14));
  }
}

TEST_CASE("d=4 is the normalized second-kind Chebyshev") {
  // P_{l,4}(cos h) = sin((l+1)h) / ((l+1) sin h)
  for (int l : {1, 2, 7, 33})
    for (double h : {0.1, 0.7, 1.9, 3.0}) {
      double expect = std::sin((l + 1) * h) / ((l + 1) * std::sin(h));
      CHECK(eval_P(4, l, std::cos(h)) == doctest::Approx(expect).epsilon(1e-11));
    }
}

TEST_CASE("endpoint values and bound") {
  for (int d : {2, 3, 5})
    for (int l : {0, 1, 4, 31}) {
      CHECK(eval_P(d, l, 1.0) == 1.0);
      CHECK(eval_P(d, l, -1.0) == doctest::Approx(l % 2 ? -1.0 : 1.0).epsilon(1e-13));
      for (double s : s_grid) CHECK(std::abs(eval_P(d, l, s)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("row evaluation matches scalar") {
  for (int d : {2, 3, 4, 6}) {
    std::vector<double> row(65);
    for (double s : {-0.8, 0.05, 0.97}) {
      eval_P_row(d, 64, s, row.data());
      for (int l = 0; l <= 64; ++l)
        CHECK(row[l] == doctest::Approx(eval_P(d, l, s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(eval_P(1, 2, 0.5), std::domain_error);
  CHECK_THROWS_AS(eval_P(3, -1, 0.5), std::domain_error);
  CHECK_THROWS_AS(eval_P(3, 2, 1.5), std::domain_error);
  CHECK_THROWS_AS(legendre_explicit_sum(3, 2, -1.01), std::domain_error);
}

TEST_CASE("derivatives at s = 1, product form vs finite differences") {
  for (int d : {2, 3, 4})
    for (int l : {1, 2, 3, 6}) {
      double h = 1e-6;
      // one-sided 2nd order at the endpoint
      double fd = (3 * eval_P(d, l, 1.0) - 4 * eval_P(d, l, 1.0 - h) +
                   eval_P(d, l, 1.0 - 2 * h)) /
                  (2 * h);
      CHECK(P_deriv_at_one(d, l, 1) == doctest::Approx(fd).epsilon(1e-4));
    }
  CHECK(P_deriv_at_one(3, 2, 5) == 0.0); // k > l
  // d=3: P'_l(1) = l(l+1)/2
  for (int l : {1, 2, 9}) CHECK(P_deriv_at_one(3, l, 1) == doctest::Approx(l * (l + 1) / 2.0));
}

TEST_CASE("derivative shift identity against central differences") {
  for (int d : {3, 5})
    for (int l : {3, 8})
      for (double s : {-0.4, 0.2, 0.8}) {
        double h = 1e-5;
        double fd = (eval_P(d, l, s + h) - eval_P(d, l, s - h)) / (2 * h);
        CHECK(eval_P_deriv(d, l, 1, s) == doctest::Approx(fd).epsilon(1e-7));
      }
}

TEST_CASE("taylor coefficients") {
  // c_{1,l} = -l(l+d-2)/(d-1)
  for (int d : {2, 3, 4})
    for (int l : {1, 2, 5, 40}) {
      double lam = static_cast<double>(l) * (l + d - 2);
      CHECK(taylor_coeff(d, 1, l) == doctest::Approx(-lam / (d - 1)).epsilon(1e-14));
    }
  CHECK(taylor_coeff(3, 3, 2) == 0.0); // k > l
  CHECK(taylor_coeff(4, 0, 7) == 1.0);

  TaylorCoeffs tc = make_taylor_coeffs(3, 4, 20);
  for (int k = 0; k <= 4; ++k)
    for (int l = 0; l <= 20; ++l) CHECK(tc.at(k, l) == taylor_coeff(3, k, l));
}

TEST_CASE("taylor expansion truncation actually converges") {
  // P(s) = sum_k c_k u^k with u = 1-s; partial sums approach the value
  int d = 3, l = 6;
  double s = 0.95, u = 1.0 - s;
  double direct = eval_P(d, l, s);
  double acc = 0.0, uk = 1.0;
  for (int k = 0; k <= l; ++k) {
    acc += taylor_coeff(d, k, l) * uk;
    uk *= u;
  }
  CHECK(acc == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("taylor remainder: two paths agree in the overlap") {
  // the tail-sum path is used for u l^2 <= 1, the difference path otherwise;
  // compare the remainder against the direct difference where both are sound
  for (int d : {2, 3, 4})
    for (int l : {8, 20})
      for (int n : {0, 1, 2})
        for (double ul2 : {0.5, 0.9}) {
          double u = ul2 / (static_cast<double>(l) * l);
          double s = 1.0 - u;
          double partial = 0.0, uk = 1.0;
          for (int k = 0; k <= n; ++k) {
            partial += taylor_coeff(d, k, l) * uk;
            uk *= u;
          }
          double diff = eval_P(d, l, s) - partial;
          double rem = taylor_remainder(d, l, n, s);
          CHECK(std::abs(rem - diff) <= 1e-9 * std::max(std::abs(diff), 1e-300));
        }
}

TEST_CASE("taylor remainder trivial cases") {
  CHECK(taylor_remainder(3, 1, 1, 0.3) == 0.0);
  CHECK(taylor_remainder(3, 0, 2, -0.5) == 0.0);
  CHECK(taylor_remainder(4, 3, 0, 1.0) == 0.0); // u = 0
}

TEST_CASE("remainder leading order for tiny u") {
  // R_{n+1} ~ c_{n+1,l} u^{n+1}
  int d = 3, l = 12, n = 1;
  double u = 1e-8, s = 1.0 - u;
  double lead = taylor_coeff(d, n + 1, l) * u * u;
  CHECK(taylor_remainder(d, l, n, s) == doctest::Approx(lead).epsilon(1e-4));
}
