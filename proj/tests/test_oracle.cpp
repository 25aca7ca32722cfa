#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hfilon/oracle.hpp"
#include "hfilon/specfun.hpp"

using namespace hfilon;

namespace {

// J1(x) = (1/pi) int_0^pi cos(t - x sin t) dt.
double bessel_j1(double x) {
  const ComplexFn f = [x](double t) { return cplx(std::cos(t - x * std::sin(t))); };
  return integrate_adaptive(f, uniform_breaks(0.0, pi, 0.05), {1e-16, 1e-14}).value.real() / pi;
}

}  // namespace

TEST_CASE("adaptive quadrature of smooth and endpoint-singular integrands") {
  const auto r = integrate_adaptive([](double x) { return std::exp(cplx(0.0, 3.0 * x)); }, {0.0, 2.0});
  CHECK(std::abs(r.value - (std::exp(cplx(0.0, 6.0)) - 1.0) / cplx(0.0, 3.0)) <= 1e-14);
  const auto l = integrate_adaptive([](double x) { return cplx(std::log(x)); }, {0.0, 1.0});
  CHECK(std::abs(l.value.real() + 1.0) <= 1e-13);
  CHECK(l.panels > 1);
}

TEST_CASE("budget exhaustion is reported") {
  ToleranceSpec tol{0.0, 1e-15, 3};
  CHECK_THROWS_AS(
      integrate_adaptive([](double x) { return cplx(std::sin(200.0 * x)); }, {0.0, 1.0}, tol),
      std::runtime_error);
}

TEST_CASE("uniform breaks cover the interval with bounded width") {
  const auto b = uniform_breaks(-1.0, 2.0, 0.4);
  CHECK(b.front() == -1.0);
  CHECK(b.back() == 2.0);
  for (std::size_t k = 1; k < b.size(); ++k) CHECK(b[k] - b[k - 1] <= 0.4 + 1e-15);
}

TEST_CASE("reference_I1: int_0^1 x J0(omega x) dx = J1(omega) / omega") {
  for (double w : {0.7, 10.0, 150.0}) {
    const auto r = reference_I1([](double x) { return cplx(x); }, w, 0.0);
    CHECK(std::abs(r.value.real() - bessel_j1(w) / w) <= 1e-12 * std::abs(bessel_j1(w) / w) + 1e-16);
  }
}

TEST_CASE("reference_I2 agrees with direct quadrature of the shifted kernel") {
  const double w = 40.0, a = 0.3, b = -0.4;
  const ComplexFn amp = [](double x) { return cplx(1.0 + x * x); };
  const ComplexFn direct = [&](double x) {
    const double d = std::sqrt((x - a * b) * (x - a * b) + a * a * (1.0 - b * b));
    return amp(x) * hankel1_0(cplx(w * d, 0.0)) * std::exp(cplx(0.0, w * b * x));
  };
  const cplx ref = integrate_adaptive(direct, uniform_breaks(-1.0, 1.0, 0.01), {1e-16, 1e-13}).value;
  CHECK(std::abs(reference_I2(amp, w, a, b).value - ref) <= 1e-11 * std::abs(ref));
}

TEST_CASE("oracle parameter validation") {
  const ComplexFn one = [](double) { return cplx(1.0); };
  CHECK_THROWS_AS(reference_I1(one, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(reference_I1(one, 600.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(reference_I2(one, 10.0, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(reference_I2(one, 10.0, 0.5, 1.0), std::invalid_argument);
  CHECK(cheb_t_real(5, 0.3) == doctest::Approx(std::cos(5.0 * std::acos(0.3))));
}
