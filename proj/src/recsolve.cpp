#include "hfilon/recsolve.hpp"

#include <cmath>
#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#define LAPACK_COMPLEX_CUSTOM
#include <lapacke.h>

#include <sstream>
#include <stdexcept>

namespace hfilon {

namespace {

constexpr double bvp_residual_tol = 1e-10;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

cplx rhs_at(const RecurrenceSpec& spec, long n) { return spec.rhs ? spec.rhs(n) : cplx(0.0); }

}  // namespace

std::vector<cplx> forward_propagate(const RecurrenceSpec& spec, const std::vector<cplx>& seed,
                                    long N, bool truncate_on_overflow) {
  const int m = spec.order;
  if (m < 1) throw std::invalid_argument("forward_propagate: order must be >= 1");
  if (static_cast<int>(seed.size()) != m)
    throw std::invalid_argument("forward_propagate: seed must hold exactly m values");
  if (N < m - 1) throw std::invalid_argument("forward_propagate: N too small for the seed");
  std::vector<cplx> y(seed);
  y.resize(N + 1);
  std::vector<cplx> a(m + 1);
  for (long n = 0; n + m <= N; ++n) {
    double others = 0.0;
    for (int l = 0; l <= m; ++l) {
      a[l] = spec.coeff(n, l);
      if (l < m) others += std::abs(a[l]);
    }
    if (std::abs(a[m]) <= 1e-14 * others)
      throw std::runtime_error("forward_propagate: leading coefficient vanishes at n = " +
                               std::to_string(n));
    cplx acc = rhs_at(spec, n);
    for (int l = 0; l < m; ++l) acc -= a[l] * y[n + l];
    y[n + m] = acc / a[m];
    if (!finite(y[n + m]) && truncate_on_overflow) {
      y.resize(n + m);
      return y;
    }
    if (!finite(y[n + m]))
      throw std::runtime_error("forward_propagate: non-finite value at index " +
                               std::to_string(n + m));
  }
  return y;
}

double max_relative_residual(const RecurrenceSpec& spec, const std::vector<cplx>& y, long first,
                             long last) {
  const int m = spec.order;
  double worst = 0.0;
  for (long n = first; n <= last && n + m < static_cast<long>(y.size()); ++n) {
    const cplx r = rhs_at(spec, n);
    cplx res = -r;
    double scale = std::abs(r);
    for (int l = 0; l <= m; ++l) {
      const cplx t = spec.coeff(n, l) * y[n + l];
      res += t;
      scale += std::abs(t);
    }
    if (scale > 0.0) worst = std::max(worst, std::abs(res) / scale);
  }
  return worst;
}

std::vector<cplx> solve_oliver_bvp(const RecurrenceSpec& spec, const BoundaryConditions& bc,
                                   long N, BvpDiagnostics* diag) {
  const int m = spec.order;
  const int j = static_cast<int>(bc.initial.size());
  if (m < 1) throw std::invalid_argument("solve_oliver_bvp: order must be >= 1");
  if (j + static_cast<int>(bc.terminal.size()) != m)
    throw std::invalid_argument("solve_oliver_bvp: boundary values must total m");
  if (N <= 2 * m) throw std::invalid_argument("solve_oliver_bvp: requires N > 2m");

  const long K = N - m + 1;  // unknowns y_j..y_{N-m+j}, one relation each
  const int kl = j, ku = m - j;
  const int ldab = 2 * kl + ku + 1;
  std::vector<cplx> ab(static_cast<std::size_t>(ldab) * K, cplx(0.0));
  std::vector<cplx> rhs(K);
  std::vector<cplx> y(N + 1, cplx(0.0));
  for (int i = 0; i < j; ++i) y[i] = bc.initial[i];
  for (int i = 0; i < m - j; ++i) y[N - m + j + 1 + i] = bc.terminal[i];

  std::vector<double> colsum(K, 0.0);
  for (long row = 0; row < K; ++row) {
    cplx b = rhs_at(spec, row);
    for (int l = 0; l <= m; ++l) {
      const cplx a = spec.coeff(row, l);
      const long idx = row + l;
      const long col = idx - j;
      if (col < 0 || col >= K) {
        b -= a * y[idx];
        continue;
      }
      ab[static_cast<std::size_t>(kl + ku + row - col) + static_cast<std::size_t>(col) * ldab] = a;
      colsum[col] += std::abs(a);
    }
    rhs[row] = b;
  }
  double anorm = 0.0;
  for (double c : colsum) anorm = std::max(anorm, c);

  std::vector<lapack_int> ipiv(K);
  lapack_int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, K, K, kl, ku, ab.data(), ldab, ipiv.data());
  double rcond = 0.0;
  if (info == 0)
    LAPACKE_zgbcon(LAPACK_COL_MAJOR, '1', K, kl, ku, ab.data(), ldab, ipiv.data(), anorm, &rcond);
  if (info != 0) {
    std::ostringstream os;
    os << "solve_oliver_bvp: singular banded system (zgbtrf info=" << info << ", rcond=0)";
    throw std::runtime_error(os.str());
  }
  info = LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', K, kl, ku, 1, ab.data(), ldab, ipiv.data(),
                        rhs.data(), K);
  if (info != 0) throw std::runtime_error("solve_oliver_bvp: zgbtrs failed");
  for (long col = 0; col < K; ++col) {
    y[col + j] = rhs[col];
    if (!finite(y[col + j])) {
      std::ostringstream os;
      os << "solve_oliver_bvp: non-finite solution (rcond=" << rcond << ")";
      throw std::runtime_error(os.str());
    }
  }
  const double res = max_relative_residual(spec, y, 0, N - m);
  if (diag) *diag = {rcond, res};
  if (!(res <= bvp_residual_tol)) {
    std::ostringstream os;
    os << "solve_oliver_bvp: residual " << res << " exceeds tolerance (rcond=" << rcond << ")";
    throw std::runtime_error(os.str());
  }
  return y;
}

}  // namespace hfilon
