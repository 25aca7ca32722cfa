#include "hfilon/amplitudes.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "hfilon/chebkit.hpp"
#include "hfilon/specfun.hpp"

namespace hfilon {

namespace {

constexpr int K = max_hermite_order + 1;

// Truncated Taylor series: c[j] = f^{(j)}(x) / j!.
struct Jet {
  std::array<double, K> c{};

  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  static Jet variable(double x) {
    Jet j;
    j.c[0] = x;
    j.c[1] = 1.0;
    return j;
  }
};

Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k < K; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k < K; ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k < K; ++k)
    for (int j = 0; j <= k; ++j) r.c[k] += a.c[j] * b.c[k - j];
  return r;
}

Jet operator*(double s, const Jet& a) {
  Jet r;
  for (int k = 0; k < K; ++k) r.c[k] = s * a.c[k];
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k < K; ++k) {
    double v = a.c[k];
    for (int j = 1; j <= k; ++j) v -= b.c[j] * r.c[k - j];
    r.c[k] = v / b.c[0];
  }
  return r;
}

// cos of x + h: cos(x + h) = sum_k cos(x + k pi/2) h^k / k!.
Jet cos_of_variable(double x) {
  Jet r;
  double fact = 1.0;
  for (int k = 0; k < K; ++k) {
    if (k > 0) fact *= k;
    r.c[k] = std::cos(x + k * pi / 2.0) / fact;
  }
  return r;
}

using JetFn = std::function<Jet(double)>;

AmplitudeSpec from_jet(const JetFn& g, int orders) {
  AmplitudeSpec a;
  a.f = [g](double x) { return cplx(g(x).c[0], 0.0); };
  double fact = 1.0;
  for (int j = 1; j <= orders; ++j) {
    fact *= j;
    a.derivs.push_back([g, j, fact](double x) { return cplx(g(x).c[j] * fact, 0.0); });
  }
  return a;
}

// Cubic B-spline on five knots by Cox-de Boor; the jet is exact within a
// knot interval (one-sided at the knots).
Jet c2spline_jet(double x) {
  static constexpr std::array<double, 5> t{0.07, 0.31, 0.43, 0.72, 0.91};
  const Jet X = Jet::variable(x);
  std::array<Jet, 4> N;
  for (int i = 0; i < 4; ++i) N[i] = Jet::constant(x >= t[i] && x < t[i + 1] ? 1.0 : 0.0);
  for (int d = 1; d <= 3; ++d)
    for (int i = 0; i < 4 - d; ++i) {
      const Jet left = (1.0 / (t[i + d] - t[i])) * (X - Jet::constant(t[i])) * N[i];
      const Jet right = (1.0 / (t[i + d + 1] - t[i + 1])) * (Jet::constant(t[i + d + 1]) - X) * N[i + 1];
      N[i] = left + right;
    }
  return N[0];
}

}  // namespace

AmplitudeSpec named_amplitude(const std::string& name) {
  if (name == "demo1") {
    AmplitudeSpec a = from_jet(
        [](double x) {
          const Jet X = Jet::variable(x);
          const Jet X2 = X * X;
          return X * cos_of_variable(x) / (Jet::constant(1.0) + X2 * X2);
        },
        max_hermite_order);
    return a;
  }
  if (name == "one") return from_jet([](double) { return Jet::constant(1.0); }, max_hermite_order);
  if (name.rfind("cheb:", 0) == 0) {
    int n = -1;
    try {
      std::size_t used = 0;
      n = std::stoi(name.substr(5), &used);
      if (used != name.size() - 5) n = -1;
    } catch (const std::exception&) {
      n = -1;
    }
    if (n < 0) throw std::invalid_argument("amplitude: bad Chebyshev degree in '" + name + "'");
    return from_jet(
        [n](double x) {
          const Jet X = Jet::variable(x);
          Jet a = Jet::constant(1.0), b = X;
          if (n == 0) return a;
          for (int k = 1; k < n; ++k) {
            const Jet next = 2.0 * X * b - a;
            a = b;
            b = next;
          }
          return b;
        },
        max_hermite_order);
  }
  if (name == "c2spline") {
    AmplitudeSpec a = from_jet(c2spline_jet, 2);
    a.smoothness = 2;
    return a;
  }
  throw std::invalid_argument("amplitude: unknown name '" + name + "'");
}

}  // namespace hfilon
