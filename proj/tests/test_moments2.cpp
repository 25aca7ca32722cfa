#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hfilon/moments2.hpp"
#include "hfilon/oracle.hpp"

using namespace hfilon;

namespace {

cplx oracle(long n, const Params2& p) {
  const ComplexFn t = [n](double x) { return cplx(cheb_t_real(static_cast<int>(n), x)); };
  return reference_I2(t, p.omega, p.alpha, p.beta, {1e-16, 1e-12, 400000}, 2.0 * n).value;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("steepest-descent initial moments match the oracle") {
  for (const Params2 p : {Params2{30.0, 0.2, 0.5}, Params2{12.0, 0.5, -0.3}, Params2{80.0, 1.0, 0.0}}) {
    const auto s = nsd_moments_sigma2(6, p);
    const double scale = std::abs(oracle(0, p));
    for (long n = 0; n <= 6; ++n) CHECK(std::abs(s[n] - oracle(n, p)) <= 1e-9 * scale);
  }
}

TEST_CASE("steepest-descent moments do not depend on the parity of the Hermite rule") {
  const Params2 p{12.0, 0.5, -0.3};
  const auto even = nsd_moments_sigma2(4, p, 30, 62);
  for (int gh : {21, 31, 63}) {
    const auto odd = nsd_moments_sigma2(4, p, 30, gh);
    for (long n = 0; n <= 4; ++n) CHECK(std::abs(odd[n] - even[n]) <= 1e-8 * std::abs(even[0]));
  }
}

TEST_CASE("moment tables match the oracle") {
  for (const Params2 p : {Params2{40.0, 0.3, 0.6}, Params2{100.0, 0.5, 0.5}}) {
    const MomentTable t = compute_sigma2(p, 60);
    for (long n = 0; n <= 60; n += 6) CHECK(rel(t.values[n], oracle(n, p)) <= 1e-6);
  }
}

TEST_CASE("returned tables satisfy the recurrence") {
  const Params2 p{60.0, 0.4, 0.2};
  const MomentTable t = compute_sigma2(p, 200);
  double worst = 0.0;
  for (long n = 1; n <= 200; ++n) {
    const auto c = rec_coeffs_sigma2(static_cast<double>(n), p);
    cplx acc = 0.0;
    double mag = 0.0;
    for (int k = 0; k < 15; ++k) {
      const cplx v = t.values[std::abs(n - k)];
      acc += c[k] * v;
      mag += std::abs(c[k] * v);
    }
    worst = std::max(worst, std::abs(acc) / mag);
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("phase function: saddle at the origin, cuts rejected") {
  const Params2 p{10.0, 0.5, 0.5};
  CHECK(std::abs(phase_g(cplx(0.0), p).dg) <= 1e-15);
  const double h = 1e-4;
  const cplx g2 = (phase_g(cplx(h), p).g - 2.0 * phase_g(cplx(0.0), p).g + phase_g(cplx(-h), p).g) / (h * h);
  CHECK(std::abs(g2 - phase_g2_at_saddle(p)) <= 1e-6);
  const double ab = p.alpha * p.beta, r = p.alpha * std::sqrt(1.0 - p.beta * p.beta);
  CHECK_THROWS_AS(phase_g(cplx(ab, 2.0 * r), p), std::domain_error);
}

TEST_CASE("contour inversion returns points with the requested phase") {
  const Params2 p{10.0, 0.5, 0.5};
  for (const Contour c : {Contour::cm1, Contour::c1}) {
    const cplx start = c == Contour::c1 ? cplx(1.0) : cplx(-1.0);
    const cplx target = phase_g(start, p).g - 0.7;
    const cplx x = g_inverse_on_contour(target, c, p);
    CHECK(std::abs(phase_g(x, p).g - target) <= 1e-12);
  }
}

TEST_CASE("characteristic roots come in conjugate-reciprocal pairs") {
  for (const Params2 p : {Params2{1.0, 0.2, 0.5}, Params2{1.0, 0.5, -0.3}, Params2{1.0, 1.5, 0.9}})
    for (double C : {0.2, 1.0, 4.0}) {
      const auto roots = char_roots_sigma2(C, p);
      REQUIRE(roots.size() == 8);
      for (cplx l : roots) {
        double best = 1e300;
        for (cplx m : roots) best = std::min(best, std::abs(m - 1.0 / std::conj(l)));
        CHECK(best <= 1e-8 * std::max(1.0, 1.0 / std::abs(l)));
      }
    }
}

TEST_CASE("regime test fires at a finite index and forward propagation then diverges") {
  const Params2 p{500.0, 0.5, 0.5};
  CHECK(regime_test_sigma2(p, 50).decision == Regime::forward_safe);
  CHECK(regime_test_sigma2(p, 200).decision == Regime::bvp_required);
  Sigma2Options fo;
  fo.path = MomentPath::forward_only;
  fo.truncate_on_overflow = true;
  const MomentTable f = compute_sigma2(p, 400, fo);
  const MomentTable b = compute_sigma2(p, 400);
  CHECK(rel(f.values[40], b.values[40]) <= 1e-7);
  CHECK((f.N() < 400 || rel(f.values[400], b.values[400]) > 1.0));
}

TEST_CASE("two-term tail tracks the table at large n") {
  const Params2 p{20.0, 0.5, 0.3};
  const MomentTable t = compute_sigma2(p, 3000);
  const TailTerms2 tt = tail_terms_sigma2(3000, p);
  CHECK(rel(tt.leading + tt.correction, t.values[3000]) <= 1e-4);
  CHECK(tt.leading == tail_sigma2(3000, p));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(compute_sigma2({10.0, 0.0, 0.5}, 4), std::invalid_argument);
  CHECK_THROWS_AS(compute_sigma2({10.0, 0.5, 1.0}, 4), std::invalid_argument);
  CHECK_THROWS_AS(compute_sigma2({-1.0, 0.5, 0.5}, 4), std::invalid_argument);
}
