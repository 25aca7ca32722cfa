#pragma once
// Moment tables shared by the two moment engines.

#include <complex>
#include <string>
#include <vector>

namespace hfilon {

using cplx = std::complex<double>;

enum class MomentKind { sigma1, sigma2 };

enum class MomentMethod { gaussian_ic, forward, oliver_bvp, asymptotic_tail, oracle };

std::string method_name(MomentMethod m);

struct MethodRange {
  MomentMethod method;
  long first, last;  // inclusive
};

// Which solver path a moment computation should take.
enum class MomentPath { automatic, forward_only, bvp_only };

struct MomentTable {
  MomentKind kind = MomentKind::sigma1;
  std::vector<cplx> values;         // sigma_0..sigma_N
  std::vector<MethodRange> ranges;  // partition of 0..N
  double omega = 0.0, alpha = 0.0, beta = 0.0;
  long M = 0;                 // extended length of the boundary-value solve, 0 if unused
  double bvp_rcond = 0.0;     // condition estimate of the banded system
  double bvp_residual = 0.0;  // max relative recurrence residual of the solve

  long N() const { return static_cast<long>(values.size()) - 1; }
  MomentMethod method_at(long n) const;
};

// Appends [first, last] with the given tag, skipping empty ranges.
void add_range(MomentTable& t, MomentMethod m, long first, long last);

}  // namespace hfilon
