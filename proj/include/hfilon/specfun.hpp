#pragma once
// Order-zero Bessel and Hankel functions of complex argument.

#include <complex>
#include <utility>

namespace hfilon {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double euler_gamma = 0.57721566490153286061;

// |z| at or below this radius uses the ascending series, above it the
// Hankel asymptotic expansion.
inline constexpr double bessel_crossover = 12.0;

// Returns (J0(z), Y0(z)). Throws std::domain_error for z = 0 or z on the
// negative real axis.
std::pair<cplx, cplx> j0y0(cplx z);

// H0^(1)(z) = J0(z) + i Y0(z).
cplx hankel1_0(cplx z);

// h0(z) = exp(-iz) H0^(1)(z), evaluated without forming exp(-iz) separately
// when that would overflow or cancel.
cplx h0_scaled(cplx z);

namespace detail {
// Individual branches, exposed for consistency testing.
std::pair<cplx, cplx> j0y0_series(cplx z);
std::pair<cplx, cplx> j0y0_asymptotic(cplx z);
cplx h0_asymptotic(cplx z);
// h0 from the integral (2/(i pi)) int_0^inf exp(-w (cosh t - 1)) dt, w = -iz,
// valid for Im z > 0.
cplx h0_integral(cplx z);
}  // namespace detail

}  // namespace hfilon
