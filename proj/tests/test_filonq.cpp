#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <thread>

#include "hfilon/amplitudes.hpp"
#include "hfilon/filonq.hpp"
#include "hfilon/oracle.hpp"

using namespace hfilon;

namespace {

const ToleranceSpec tight{1e-16, 1e-13, 400000};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("q1 is exact on polynomials of degree 2s + nu + 1") {
  for (int s = 0; s <= 2; ++s) {
    const int nu = 8, deg = 2 * s + nu + 1;
    const AmplitudeSpec amp = named_amplitude("cheb:" + std::to_string(deg));
    for (double beta : {-1.0, 0.5, 1.5}) {
      const Params1 p{80.0, beta};
      const cplx ref = reference_I1(amp.f, p.omega, p.beta, tight, 2.0 * deg).value;
      CHECK(rel(q1(amp, s, nu, p), ref) <= 1e-10);
    }
  }
}

TEST_CASE("q2 is exact on polynomials of degree 3s + nu + 1") {
  for (int s = 0; s <= 2; ++s) {
    const int nu = 9, deg = 3 * s + nu + 1;
    const AmplitudeSpec amp = named_amplitude("cheb:" + std::to_string(deg));
    const Params2 p{60.0, 0.2, 0.5};
    const cplx ref = reference_I2(amp.f, p.omega, p.alpha, p.beta, tight, 2.0 * deg).value;
    CHECK(rel(q2(amp, s, nu, p), ref) <= 1e-10);
  }
}

TEST_CASE("error decreases with s for a smooth amplitude") {
  const AmplitudeSpec amp = named_amplitude("demo1");
  const Params1 p{150.0, 1.5};
  const cplx ref = reference_I1(amp.f, p.omega, p.beta, tight).value;
  const double e0 = std::abs(q1(amp, 0, 8, p) - ref), e2 = std::abs(q1(amp, 2, 8, p) - ref);
  CHECK(e2 < e0 / 100.0);
}

TEST_CASE("missing derivatives clamp s to 0") {
  AmplitudeSpec amp;
  amp.f = [](double x) { return cplx(std::exp(x)); };
  QuadInfo info;
  const cplx v = q1(amp, 2, 8, {50.0, 0.0}, &info);
  CHECK(info.s_clamped);
  CHECK(info.s_used == 0);
  CHECK(info.moments == 10);
  CHECK(std::isfinite(v.real()));
}

TEST_CASE("rule preconditions") {
  const AmplitudeSpec amp = named_amplitude("one");
  CHECK_THROWS_AS(q1(amp, 2, 3, {10.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(q2(amp, 0, 8, {10.0, 0.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(q2(amp, 2, 5, {10.0, 0.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(q1(amp, -1, 8, {10.0, 0.0}), std::invalid_argument);
}

TEST_CASE("exponential moments match direct quadrature") {
  for (double k : {0.3, 5.0, 37.5, -120.0})
    for (long nmax : {3L, 40L}) {
      const auto mu = exp_moments(k, nmax);
      for (long n = 0; n <= nmax; n += 7) {
        const ComplexFn f = [n, k](double t) { return cheb_t_real(static_cast<int>(n), t) * std::exp(cplx(0.0, k * t)); };
        const cplx ref = integrate_adaptive(f, uniform_breaks(-1.0, 1.0, 0.02), {1e-15, 1e-12}).value;
        CHECK(std::abs(mu[n] - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
      }
    }
}

TEST_CASE("fcc_exp integrates smooth amplitudes against exp(i omega x)") {
  const RealToComplex f = [](double x) { return cplx(1.0 / (1.0 + x * x)); };
  for (double w : {2.0, 80.0, -300.0}) {
    const ComplexFn g = [&](double x) { return f(x) * std::exp(cplx(0.0, w * x)); };
    const cplx ref = integrate_adaptive(g, uniform_breaks(0.2, 0.9, 0.005), {1e-15, 1e-12}).value;
    CHECK(std::abs(fcc_exp(f, 16, w, 0.2, 0.9) - ref) <= 1e-9 * std::abs(ref));
  }
  CHECK_THROWS_AS(fcc_exp(f, 16, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("moment cache reuses longer tables and is safe under concurrent use") {
  MomentCache cache;
  const Params1 p{30.0, 0.5};
  const auto long_table = cache.sigma1(p, 40);
  const auto short_table = cache.sigma1(p, 10);
  CHECK(short_table.get() == long_table.get());
  CHECK(cache.size() == 1);
  std::vector<std::thread> pool;
  std::vector<cplx> out(8);
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([&, t] { out[t] = cache.sigma2({20.0 + t % 2, 0.5, 0.2}, 12)->values[12]; });
  for (auto& th : pool) th.join();
  CHECK(cache.size() == 3);
  for (int t = 2; t < 8; ++t) CHECK(out[t] == out[t % 2]);
  cache.clear();
  CHECK(cache.size() == 0);
}

TEST_CASE("named amplitudes carry consistent derivatives") {
  for (const char* name : {"demo1", "cheb:7", "c2spline"}) {
    const AmplitudeSpec a = named_amplitude(name);
    REQUIRE(!a.derivs.empty());
    const double x = 0.37, h = 1e-5;
    const cplx fd = (a.f(x + h) - a.f(x - h)) / (2.0 * h);
    CHECK(std::abs(a.derivs[0](x) - fd) <= 1e-7);
  }
  CHECK(named_amplitude("c2spline").smoothness == 2);
  CHECK(named_amplitude("c2spline").derivs.size() == 2);
  CHECK_THROWS_AS(named_amplitude("nope"), std::invalid_argument);
  CHECK_THROWS_AS(named_amplitude("cheb:x"), std::invalid_argument);
}
