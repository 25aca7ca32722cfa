#pragma once
// Linear (m+1)-term recurrences: forward propagation and Oliver's
// boundary-value formulation solved as a banded system.

#include <complex>
#include <functional>
#include <vector>

namespace hfilon {

using cplx = std::complex<double>;

// sum_{l=0}^{m} a_l(n) y_{n+l} = r(n) for n = 0, 1, ...
// A missing rhs means the homogeneous recurrence.
struct RecurrenceSpec {
  int order = 0;
  std::function<cplx(long n, int l)> coeff;
  std::function<cplx(long n)> rhs;
};

// Leading values y_0..y_{j-1} and trailing values y_{N-m+j+1}..y_N.
struct BoundaryConditions {
  std::vector<cplx> initial;
  std::vector<cplx> terminal;
};

struct BvpDiagnostics {
  double rcond = 0.0;         // reciprocal 1-norm condition estimate
  double max_residual = 0.0;  // max over rows of |res| / sum |a_l y_{n+l}|
};

// Given y_0..y_{m-1}, returns y_0..y_N by solving each relation for its
// highest-index term. Throws if a_m(n) is negligible against the other
// coefficients or a value stops being finite; with truncate_on_overflow the
// values before the first non-finite one are returned instead.
std::vector<cplx> forward_propagate(const RecurrenceSpec& spec, const std::vector<cplx>& seed,
                                    long N, bool truncate_on_overflow = false);

// Solves for y_j..y_{N-m+j} from relations n = 0..N-m with j = initial.size()
// and m - j = terminal.size(). Banded LU with partial pivoting (LAPACK zgbtrf).
// Throws std::runtime_error carrying the condition estimate if the system is
// singular or the returned sequence violates the recurrence by more than
// 1e-10 relative in any row.
std::vector<cplx> solve_oliver_bvp(const RecurrenceSpec& spec, const BoundaryConditions& bc,
                                   long N, BvpDiagnostics* diag = nullptr);

// max over n of |sum_l a_l(n) y_{n+l} - r(n)| / (sum_l |a_l(n) y_{n+l}| + |r(n)|),
// for relations n in [first, last].
double max_relative_residual(const RecurrenceSpec& spec, const std::vector<cplx>& y, long first,
                             long last);

}  // namespace hfilon
