#include "hfilon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "hfilon/gaussrules.hpp"
#include "hfilon/specfun.hpp"

namespace hfilon {

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const ComplexFn& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx k = wgk[7] * fc, g = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const cplx s = f(c - h * xgk[i]) + f(c + h * xgk[i]);
    k += wgk[i] * s;
    if (i % 2 == 1) g += wg[i / 2] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

std::vector<double> uniform_breaks(double a, double b, double h) {
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
  std::vector<double> out(n + 1);
  for (int i = 0; i <= n; ++i) out[i] = a + (b - a) * i / n;
  out.back() = b;
  return out;
}

OracleResult integrate_adaptive(const ComplexFn& f, const std::vector<double>& breakpoints,
                                const ToleranceSpec& tol) {
  if (breakpoints.size() < 2) throw std::invalid_argument("integrate_adaptive: need >= 2 breakpoints");
  std::vector<Panel> heap;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    heap.push_back(gk15(f, breakpoints[i], breakpoints[i + 1]));
  }
  std::make_heap(heap.begin(), heap.end());
  cplx total = 0.0;
  double err = 0.0;
  // Incremental updates drift by rounding over many subdivisions; re-sum exactly.
  const auto resum = [&] {
    total = 0.0;
    err = 0.0;
    for (const Panel& p : heap) {
      total += p.value;
      err += p.error;
    }
  };
  resum();
  int panels = static_cast<int>(heap.size());
  int since_resum = 0;
  const auto target = [&] { return std::max(tol.abs_tol, tol.rel_tol * std::abs(total)); };
  while (true) {
    if (err <= target() || since_resum >= 1024) {
      resum();
      since_resum = 0;
      if (err <= target()) break;
    }
    if (panels >= tol.max_subdivisions) {
      std::ostringstream os;
      os << "integrate_adaptive: tolerance not met after " << panels
         << " panels (error estimate " << err << ")";
      throw std::runtime_error(os.str());
    }
    std::pop_heap(heap.begin(), heap.end());
    Panel p = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      // Panel cannot be split further in double precision.
      if (heap.empty()) break;
      err -= p.error;
      p.error = 0.0;
      heap.push_back(p);
      std::push_heap(heap.begin(), heap.end());
      continue;
    }
    const Panel l = gk15(f, p.a, mid), r = gk15(f, mid, p.b);
    total += l.value + r.value - p.value;
    err += l.error + r.error - p.error;
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(r);
    std::push_heap(heap.begin(), heap.end());
    ++panels;
    ++since_resum;
  }
  resum();
  return {total, err, panels};
}

double cheb_t_real(int n, double t) {
  t = std::clamp(t, -1.0, 1.0);
  return std::cos(n * std::acos(t));
}

OracleResult reference_I1(const ComplexFn& amp, double omega, double beta,
                          const ToleranceSpec& tol, double extra_freq) {
  if (!(omega > 0.0) || omega > 500.0)
    throw std::invalid_argument("reference_I1: omega must lie in (0, 500]");
  const auto kernel = [&](double x) {
    return amp(x) * hankel1_0(cplx(omega * x, 0.0)) * std::exp(cplx(0.0, omega * beta * x));
  };
  // Innermost piece [0, delta] through x = delta e^{-u} and Gauss-Laguerre.
  const double delta = std::ldexp(1.0, -30) / std::max(1.0, omega);
  static const QuadRule lag = laguerre_rule(30);
  cplx inner = 0.0;
  for (std::size_t k = 0; k < lag.nodes.size(); ++k) {
    const double x = delta * std::exp(-lag.nodes[k]);
    if (x > 0.0) inner += lag.weights[k] * delta * kernel(x);
  }
  // Dyadic grading from delta up to 2^-3, then wavelength-resolving panels.
  std::vector<double> br{delta};
  while (br.back() * 2.0 < 0.125) br.push_back(br.back() * 2.0);
  const double freq = omega * (1.0 + std::abs(beta)) + extra_freq;
  const double h = std::min(0.125, 2.0 * pi / (10.0 * std::max(freq, 1.0)));
  for (double x : uniform_breaks(0.125, 1.0, h)) br.push_back(x);
  br.erase(std::unique(br.begin(), br.end()), br.end());
  ToleranceSpec t = tol;
  OracleResult r = integrate_adaptive(kernel, br, t);
  r.value += inner;
  return r;
}

OracleResult reference_I2(const ComplexFn& amp, double omega, double alpha, double beta,
                          const ToleranceSpec& tol, double extra_freq) {
  if (!(omega > 0.0) || omega > 500.0)
    throw std::invalid_argument("reference_I2: omega must lie in (0, 500]");
  if (!(alpha > 0.0) || !(std::abs(beta) < 1.0))
    throw std::invalid_argument("reference_I2: requires alpha > 0 and |beta| < 1");
  const double ab = alpha * beta, r2 = alpha * alpha * (1.0 - beta * beta);
  const auto kernel = [&](double x) {
    const double d = std::sqrt((x - ab) * (x - ab) + r2);
    return amp(x) * hankel1_0(cplx(omega * d, 0.0)) * std::exp(cplx(0.0, omega * beta * x));
  };
  const double freq = omega * (1.0 + std::abs(beta)) + extra_freq;
  const double h = std::min(0.125, 2.0 * pi / (10.0 * std::max(freq, 1.0)));
  return integrate_adaptive(kernel, uniform_breaks(-1.0, 1.0, h), tol);
}

}  // namespace hfilon
