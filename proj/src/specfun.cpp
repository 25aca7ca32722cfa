#include "hfilon/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace hfilon {

namespace {

using lcplx = std::complex<long double>;

constexpr long double pi_l = 3.141592653589793238462643383279502884L;
constexpr long double gamma_l = 0.577215664901532860606512090082402431L;

void check_domain(cplx z) {
  if (z == cplx(0.0, 0.0)) throw std::domain_error("Bessel Y0: argument is zero");
  if (z.imag() == 0.0 && z.real() < 0.0)
    throw std::domain_error("Bessel Y0: argument on the negative real branch cut");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("Bessel: non-finite argument");
}

// Ascending series, real positive argument. Both outputs exactly real.
std::pair<double, double> series_real(long double x) {
  const long double t = -x * x / 4.0L;
  long double term = 1.0L, j0 = 1.0L, ysum = 0.0L, harmonic = 0.0L;
  for (int k = 1; k < 200; ++k) {
    term *= t / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    j0 += term;
    ysum += harmonic * term;
    if (std::fabs(term) * harmonic < 1e-22L * (std::fabs(j0) + std::fabs(ysum)) && k > 4) break;
  }
  const long double y0 = 2.0L / pi_l * ((std::log(x / 2.0L) + gamma_l) * j0 - ysum);
  return {static_cast<double>(j0), static_cast<double>(y0)};
}

// Hankel expansion coefficients i^k a_k for order zero, with
// a_k = (-1)^k prod_{j<=k} (2j-1)^2 / (k! 8^k).
struct AsymptoticSums {
  cplx plus;   // sum_k i^k a_k z^{-k}
  cplx minus;  // sum_k (-i)^k a_k z^{-k}
};

AsymptoticSums asymptotic_sums(cplx z) {
  const cplx iz_inv = cplx(0.0, 1.0) / z;
  cplx tp(1.0, 0.0), tm(1.0, 0.0);
  cplx sp = tp, sm = tm;
  double prev = 1.0;
  for (int k = 1; k < 80; ++k) {
    const double f = -static_cast<double>((2 * k - 1) * (2 * k - 1)) / (8.0 * k);
    tp *= f * iz_inv;
    tm *= -f * iz_inv;
    const double mag = std::abs(tp);
    if (k >= 10 && mag > prev) break;  // optimal truncation
    sp += tp;
    sm += tm;
    if (mag < 1e-17 * std::abs(sp) && k >= 10) break;
    prev = mag;
  }
  return {sp, sm};
}

}  // namespace

namespace detail {

std::pair<cplx, cplx> j0y0_series(cplx z) {
  if (z.imag() == 0.0 && z.real() > 0.0) {
    auto [j, y] = series_real(z.real());
    return {cplx(j, 0.0), cplx(y, 0.0)};
  }
  const lcplx zl(z.real(), z.imag());
  const lcplx t = -zl * zl / 4.0L;
  lcplx term = 1.0L, j0 = 1.0L, ysum = 0.0L;
  long double harmonic = 0.0L;
  for (int k = 1; k < 200; ++k) {
    term *= t / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    j0 += term;
    ysum += harmonic * term;
    if (std::abs(term) * harmonic < 1e-22L * (std::abs(j0) + std::abs(ysum)) && k > 4) break;
  }
  const lcplx y0 = 2.0L / pi_l * ((std::log(zl / 2.0L) + gamma_l) * j0 - ysum);
  return {cplx(static_cast<double>(j0.real()), static_cast<double>(j0.imag())),
          cplx(static_cast<double>(y0.real()), static_cast<double>(y0.imag()))};
}

std::pair<cplx, cplx> j0y0_asymptotic(cplx z) {
  if (z.imag() == 0.0 && z.real() > 0.0) {
    // Real form: H0 = sqrt(2/(pi x)) (P + iQ) e^{i chi}.
    const double x = z.real();
    const auto s = asymptotic_sums(z);
    const double P = s.plus.real(), Q = s.plus.imag();
    const double chi = x - pi / 4.0;
    const double amp = std::sqrt(2.0 / (pi * x));
    const double c = std::cos(chi), sn = std::sin(chi);
    return {cplx(amp * (P * c - Q * sn), 0.0), cplx(amp * (P * sn + Q * c), 0.0)};
  }
  const auto s = asymptotic_sums(z);
  const cplx amp = std::sqrt(2.0 / (pi * z));
  const cplx chi = z - pi / 4.0;
  const cplx e = std::exp(cplx(0.0, 1.0) * chi);
  const cplx h1 = amp * e * s.plus;
  const cplx h2 = amp / e * s.minus;
  return {0.5 * (h1 + h2), (h1 - h2) / cplx(0.0, 2.0)};
}

cplx h0_asymptotic(cplx z) {
  const auto s = asymptotic_sums(z);
  return std::sqrt(2.0 / (pi * z)) * std::exp(cplx(0.0, -pi / 4.0)) * s.plus;
}

cplx h0_integral(cplx z) {
  if (!(z.imag() > 0.0)) throw std::domain_error("h0_integral: requires Im z > 0");
  const cplx w(z.imag(), -z.real());  // w = -iz, Re w > 0
  const double theta = std::abs(std::arg(w));
  const double strip = std::max(pi / 2.0 - theta, 0.02);
  const double h = std::min(0.25, 2.0 * pi * strip / 40.0);
  cplx sum = 0.5;  // t = 0 endpoint, integrand 1
  for (int k = 1; k < 100000; ++k) {
    const double t = k * h;
    const double sh = std::sinh(0.5 * t);
    const cplx e = -2.0 * w * sh * sh;
    if (e.real() < -745.0) break;
    const cplx v = std::exp(e);
    sum += v;
    if (std::abs(v) < 1e-18 * std::abs(sum)) break;
  }
  return 2.0 / (pi * cplx(0.0, 1.0)) * h * sum;
}

}  // namespace detail

namespace {

// The Hankel expansion degrades near the negative real axis; for Re z < 0
// reflect through w = -z using J0(-w) = J0(w), Y0(w e^{+-i pi}) = Y0(w) +- 2i J0(w).
std::pair<cplx, cplx> j0y0_large(cplx z) {
  if (z.real() >= 0.0) return detail::j0y0_asymptotic(z);
  auto [j, y] = detail::j0y0_asymptotic(-z);
  const cplx twoi(0.0, z.imag() > 0.0 ? 2.0 : -2.0);
  return {j, y + twoi * j};
}

// e^{-iz} H0^(1)(z) for |z| above the crossover.
cplx h0_scaled_large(cplx z) {
  if (z.real() >= 0.0) return detail::h0_asymptotic(z);
  if (z.imag() > 0.0) return -std::conj(detail::h0_asymptotic(-std::conj(z)));
  auto [j, y] = j0y0_large(z);
  return std::exp(cplx(0.0, -1.0) * z) * (j + cplx(0.0, 1.0) * y);
}

}  // namespace

std::pair<cplx, cplx> j0y0(cplx z) {
  check_domain(z);
  return std::abs(z) <= bessel_crossover ? detail::j0y0_series(z) : j0y0_large(z);
}

cplx hankel1_0(cplx z) {
  check_domain(z);
  if (std::abs(z) > bessel_crossover) return std::exp(cplx(0.0, 1.0) * z) * h0_scaled_large(z);
  // J0 and Y0 both grow like e^{Im z} while H0 decays; avoid the cancellation.
  if (z.imag() > 3.0) return std::exp(cplx(0.0, 1.0) * z) * detail::h0_integral(z);
  auto [j, y] = detail::j0y0_series(z);
  return j + cplx(0.0, 1.0) * y;
}

cplx h0_scaled(cplx z) {
  check_domain(z);
  if (std::abs(z) > bessel_crossover) return h0_scaled_large(z);
  if (z.imag() > 3.0) return detail::h0_integral(z);
  auto [j, y] = detail::j0y0_series(z);
  return std::exp(cplx(0.0, -1.0) * z) * (j + cplx(0.0, 1.0) * y);
}

}  // namespace hfilon
