#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hfilon/oracle.hpp"
#include "hfilon/recsolve.hpp"

using namespace hfilon;

namespace {

// J_n(x) from its power series in long double; x is small enough that
// the terms do not cancel badly.
double bessel_j(int n, double x) {
  long double sum = 0.0L;
  const long double h = x / 2.0L;
  for (int k = 0; k < 80; ++k) {
    const long double term =
        std::exp(static_cast<long double>(2 * k + n) * std::log(h) - std::lgamma(k + 1.0L) -
                 std::lgamma(static_cast<long double>(n + k + 1)));
    sum += (k % 2 == 0 ? term : -term);
  }
  return static_cast<double>(sum);
}

// J_{n+2} - (2(n+1)/x) J_{n+1} + J_n = 0.
RecurrenceSpec bessel_spec(double x) {
  RecurrenceSpec s;
  s.order = 2;
  s.coeff = [x](long n, int l) -> cplx {
    if (l == 1) return -2.0 * (n + 1.0) / x;
    return 1.0;
  };
  return s;
}

}  // namespace

TEST_CASE("Oliver boundary-value solve recovers the minimal Bessel solution") {
  const double x = 5.0;
  BoundaryConditions bc;
  bc.initial = {cplx(bessel_j(0, x))};
  bc.terminal = {cplx(0.0)};
  BvpDiagnostics diag;
  const auto y = solve_oliver_bvp(bessel_spec(x), bc, 80, &diag);
  REQUIRE(y.size() == 81);
  for (int n : {0, 1, 5, 10, 20, 30}) {
    const double ref = bessel_j(n, x);
    CHECK(std::abs(y[n].real() - ref) <= 1e-12 * std::abs(ref));
  }
  CHECK(diag.rcond > 0.0);
  CHECK(diag.max_residual <= 1e-10);
  CHECK(max_relative_residual(bessel_spec(x), y, 0, 78) <= 1e-10);
}

TEST_CASE("forward propagation of the minimal solution loses accuracy past n = x") {
  const double x = 5.0;
  const auto y = forward_propagate(bessel_spec(x), {cplx(bessel_j(0, x)), cplx(bessel_j(1, x))}, 30);
  CHECK(std::abs(y[3].real() - bessel_j(3, x)) <= 1e-13);
  CHECK(std::abs(y[30].real() - bessel_j(30, x)) > 1e3 * std::abs(bessel_j(30, x)));
}

TEST_CASE("forward propagation with a right-hand side") {
  // y_{n+1} - y_n = 1 from y_0 = 2.
  RecurrenceSpec s;
  s.order = 1;
  s.coeff = [](long, int l) -> cplx { return l == 1 ? 1.0 : -1.0; };
  s.rhs = [](long) { return cplx(1.0); };
  const auto y = forward_propagate(s, {cplx(2.0)}, 10);
  CHECK(y[10] == cplx(12.0));
}

TEST_CASE("overflow throws unless truncation is requested") {
  RecurrenceSpec s;
  s.order = 1;
  s.coeff = [](long, int l) -> cplx { return l == 1 ? 1.0 : -1e13; };
  CHECK_THROWS_AS(forward_propagate(s, {cplx(1.0)}, 30), std::runtime_error);
  const auto y = forward_propagate(s, {cplx(1.0)}, 30, true);
  CHECK(y.size() == 24);  // y_n = 1e13^n overflows at n = 24
  CHECK(std::isfinite(y.back().real()));
}

TEST_CASE("boundary-value input validation") {
  BoundaryConditions bc;
  bc.initial = {cplx(1.0)};
  CHECK_THROWS(solve_oliver_bvp(bessel_spec(1.0), bc, 20));  // one terminal value missing
}
