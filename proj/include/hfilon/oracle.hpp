#pragma once
// Slow reference evaluators: adaptive Gauss-Kronrod quadrature of the two
// Hankel-kernel integrals and of generic complex integrands.

#include <complex>
#include <functional>
#include <vector>

namespace hfilon {

using cplx = std::complex<double>;
using ComplexFn = std::function<cplx(double)>;

struct ToleranceSpec {
  double abs_tol = 1e-15;
  double rel_tol = 1e-12;
  int max_subdivisions = 200000;
};

struct OracleResult {
  cplx value;
  double error = 0.0;  // estimated absolute error
  int panels = 0;
};

// Globally adaptive 15-point Gauss-Kronrod over the panels defined by the
// sorted breakpoints. Throws std::runtime_error if the tolerance is not met
// within the subdivision budget.
OracleResult integrate_adaptive(const ComplexFn& f, const std::vector<double>& breakpoints,
                                const ToleranceSpec& tol = {});

// Uniform breakpoints on [a, b] with panel width at most h.
std::vector<double> uniform_breaks(double a, double b, double h);

// int_0^1 f(x) H0(omega x) exp(i omega beta x) dx. omega in (0, 500].
// extra_freq widens the initial partition for oscillatory amplitudes.
OracleResult reference_I1(const ComplexFn& amp, double omega, double beta,
                          const ToleranceSpec& tol = {}, double extra_freq = 0.0);

// int_{-1}^1 f(x) H0(omega sqrt((x - ab)^2 + a^2 (1 - b^2))) exp(i omega b x) dx
// with a = alpha, b = beta. omega in (0, 500], alpha > 0, |beta| < 1.
OracleResult reference_I2(const ComplexFn& amp, double omega, double alpha, double beta,
                          const ToleranceSpec& tol = {}, double extra_freq = 0.0);

// T_n(t) for real t in [-1, 1], via the cosine form.
double cheb_t_real(int n, double t);

}  // namespace hfilon
