#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "hfilon/chebkit.hpp"

using namespace hfilon;

namespace {

constexpr double pi_d = 3.14159265358979323846;

// Coefficients of the derivative of a Chebyshev series.
std::vector<cplx> derivative_coeffs(std::vector<cplx> c) {
  const int n = static_cast<int>(c.size()) - 1;
  // d_{k-1} = d_{k+1} + 2 k c_k, then halve d_0.
  std::vector<cplx> e(n + 2, cplx(0.0));
  for (int k = n; k >= 1; --k) e[k - 1] = e[k + 1] + 2.0 * static_cast<double>(k) * c[k];
  e[0] *= 0.5;
  e.resize(std::max(n, 1));
  return e;
}

}  // namespace

TEST_CASE("Clenshaw-Curtis points are symmetric with endpoints +-1") {
  for (int nu : {1, 2, 8, 9, 17}) {
    const auto c = cc_points(nu);
    REQUIRE(static_cast<int>(c.size()) == nu + 2);
    CHECK(c.front() == 1.0);
    CHECK(c.back() == -1.0);
    for (int n = 0; n <= nu + 1; ++n) {
      CHECK(c[n] == -c[nu + 1 - n]);
      CHECK(std::abs(c[n] - std::cos(n * pi_d / (nu + 1))) <= 1e-15);
    }
  }
}

TEST_CASE("dct1 inverts idct1") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {2, 3, 10, 33}) {
    std::vector<cplx> v(n);
    for (auto& x : v) x = cplx(u(rng), u(rng));
    const auto back = dct1(idct1(v));
    for (int k = 0; k < n; ++k) CHECK(std::abs(back[k] - v[k]) <= 1e-14);
  }
}

TEST_CASE("idct1 recovers Chebyshev coefficients from samples") {
  const int nu = 6;
  const auto c = cc_points(nu);
  std::vector<cplx> samples;
  for (double x : c) samples.push_back(cplx(std::cos(3.0 * std::acos(x)) + 0.5));
  const auto p = idct1(samples);
  // Interior coefficients exactly, endpoint coefficients doubled.
  CHECK(std::abs(p[0] - 1.0) <= 1e-14);
  CHECK(std::abs(p[3] - 1.0) <= 1e-14);
  CHECK(std::abs(p[1]) <= 1e-14);
}

TEST_CASE("Chebyshev derivative values at -1, 0, 1") {
  for (int n = 0; n <= 70; ++n) {
    const double dn = n;
    CHECK(cheb_deriv_value(n, 0, 1) == 1.0);
    CHECK(cheb_deriv_value(n, 0, -1) == (n % 2 ? -1.0 : 1.0));
    CHECK(std::abs(cheb_deriv_value(n, 1, 1) - dn * dn) <= 1e-15 * dn * dn);
    CHECK(std::abs(cheb_deriv_value(n, 2, 1) - dn * dn * (dn * dn - 1.0) / 3.0) <=
          1e-14 * (1.0 + dn * dn * dn * dn));
    CHECK(cheb_deriv_value(n, 1, 0) == doctest::Approx(dn * std::sin(dn * pi_d / 2.0)));
    CHECK(std::abs(cheb_deriv_value(n, 2, 0) + dn * dn * std::cos(dn * pi_d / 2.0)) <= 1e-9);
  }
  CHECK(cheb_deriv_value(3, 4, 1) == 0.0);
  CHECK_THROWS_AS(cheb_deriv_value(3, 1, 2), std::invalid_argument);
}

TEST_CASE("interp_p1 reproduces polynomials of degree 2s + nu + 1 with endpoint derivatives") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s <= 2; ++s)
    for (int nu : {std::max(1, 2 * s), 8}) {
      const int deg = 2 * s + nu + 1;
      ChebCoeffs truth{std::vector<cplx>(deg + 1), ChebDomain::shifted};
      for (auto& c : truth.coeffs) c = cplx(u(rng), u(rng));
      HermiteData data;
      for (double c : cc_points(nu)) data.samples.push_back(eval_cheb(truth, (c + 1.0) / 2.0));
      // Derivatives in x = (t + 1)/2 gain a factor 2^j.
      std::vector<cplx> d = truth.coeffs;
      for (int j = 0; j <= s; ++j) {
        ChebCoeffs dj{d, ChebDomain::standard};
        data.left.push_back(eval_cheb(dj, -1.0) * std::ldexp(1.0, j));
        data.right.push_back(eval_cheb(dj, 1.0) * std::ldexp(1.0, j));
        d = derivative_coeffs(d);
      }
      const ChebCoeffs got = interp_p1(data, s, nu);
      REQUIRE(got.coeffs.size() == truth.coeffs.size());
      for (int n = 0; n <= deg; ++n) CHECK(std::abs(got.coeffs[n] - truth.coeffs[n]) <= 1e-11);
    }
}

TEST_CASE("interp_p2 also matches derivatives at the centre") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s <= 2; ++s) {
    const int nu = 9, deg = 3 * s + nu + 1;
    ChebCoeffs truth{std::vector<cplx>(deg + 1), ChebDomain::standard};
    for (auto& c : truth.coeffs) c = cplx(u(rng), u(rng));
    HermiteData data;
    for (double c : cc_points(nu)) data.samples.push_back(eval_cheb(truth, c));
    std::vector<cplx> d = truth.coeffs;
    for (int j = 0; j <= s; ++j) {
      ChebCoeffs dj{d, ChebDomain::standard};
      data.left.push_back(eval_cheb(dj, -1.0));
      data.mid.push_back(eval_cheb(dj, 0.0));
      data.right.push_back(eval_cheb(dj, 1.0));
      d = derivative_coeffs(d);
    }
    const ChebCoeffs got = interp_p2(data, s, nu);
    for (int n = 0; n <= deg; ++n) CHECK(std::abs(got.coeffs[n] - truth.coeffs[n]) <= 1e-11);
  }
}

TEST_CASE("interpolation preconditions") {
  HermiteData data;
  data.samples.assign(10, cplx(1.0));
  data.left = data.right = data.mid = {cplx(1.0), cplx(0.0), cplx(0.0)};
  CHECK_THROWS_AS(interp_p1(data, 0, 7), std::invalid_argument);  // wrong sample count
  CHECK_THROWS_AS(interp_p2(data, 0, 8), std::invalid_argument);  // nu even
  HermiteData rich = data;
  rich.left = rich.right = std::vector<cplx>(6, cplx(0.0));
  CHECK_THROWS_AS(interp_p1(rich, 5, 8), std::invalid_argument);  // nu < 2s
  data.left.resize(1);
  // Missing derivatives force s = 0: the constant is reproduced.
  const ChebCoeffs c = interp_p1(data, 2, 8);
  CHECK(c.coeffs.size() == 10);
  CHECK(std::abs(eval_cheb(c, 0.3) - 1.0) <= 1e-14);
}

TEST_CASE("Clenshaw evaluation agrees with cos(n arccos x)") {
  ChebCoeffs c{std::vector<cplx>(8, cplx(0.0)), ChebDomain::standard};
  c.coeffs[7] = 1.0;
  for (double x : {-0.9, -0.2, 0.0, 0.4, 1.0})
    CHECK(std::abs(eval_cheb(c, x) - std::cos(7.0 * std::acos(x))) <= 1e-14);
  CHECK(std::abs(cheb_t(7, cplx(0.4, 0.0)) - std::cos(7.0 * std::acos(0.4))) <= 1e-14);
}
