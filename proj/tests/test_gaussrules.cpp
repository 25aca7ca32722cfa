#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hfilon/gaussrules.hpp"

using namespace hfilon;

TEST_CASE("Gauss-Hermite integrates x^k e^{-x^2} exactly for k <= 2m-1") {
  for (int m = 1; m <= 20; ++m) {
    const QuadRule r = hermite_rule(m);
    REQUIRE(static_cast<int>(r.nodes.size()) == m);
    for (int k = 0; k <= 2 * m - 1; ++k) {
      double sum = 0.0, mag = 0.0;
      for (int i = 0; i < m; ++i) {
        sum += r.weights[i] * std::pow(r.nodes[i], k);
        mag += r.weights[i] * std::abs(std::pow(r.nodes[i], k));
      }
      const double exact = k % 2 ? 0.0 : std::tgamma((k + 1) / 2.0);
      CHECK(std::abs(sum - exact) <= 1e-12 * mag);
    }
  }
}

TEST_CASE("Gauss-Laguerre integrates x^k e^{-x} exactly for k <= 2m-1") {
  for (int m = 1; m <= 20; ++m) {
    const QuadRule r = laguerre_rule(m);
    for (int k = 0; k <= 2 * m - 1; ++k) {
      double sum = 0.0;
      for (int i = 0; i < m; ++i) sum += r.weights[i] * std::pow(r.nodes[i], k);
      CHECK(std::abs(sum - std::tgamma(k + 1.0)) <= 1e-11 * std::tgamma(k + 1.0));
    }
  }
}

TEST_CASE("nodes increase, weights are positive, Hermite nodes are symmetric") {
  for (int m : {1, 2, 7, 30, 120}) {
    const QuadRule h = hermite_rule(m), l = laguerre_rule(m);
    for (int i = 0; i < m; ++i) {
      CHECK(h.weights[i] > 0.0);
      CHECK(l.weights[i] > 0.0);
      CHECK(l.nodes[i] > 0.0);
      CHECK(std::abs(h.nodes[i] + h.nodes[m - 1 - i]) <= 1e-13 * (1.0 + std::abs(h.nodes[i])));
      if (i > 0) {
        CHECK(h.nodes[i] > h.nodes[i - 1]);
        CHECK(l.nodes[i] > l.nodes[i - 1]);
      }
    }
  }
}

TEST_CASE("node counts out of range are rejected") {
  CHECK_THROWS_AS(hermite_rule(0), std::invalid_argument);
  CHECK_THROWS_AS(laguerre_rule(201), std::invalid_argument);
}
