#pragma once
// Clenshaw-Curtis grids, DCT-I transforms, Chebyshev derivative values and
// Hermite-type interpolation at Clenshaw-Curtis points.

#include <complex>
#include <optional>
#include <vector>

namespace hfilon {

using cplx = std::complex<double>;

enum class ChebDomain { standard, shifted };  // [-1,1] or [0,1] via t = 2x-1

struct ChebCoeffs {
  std::vector<cplx> coeffs;  // coeffs[n] multiplies T_n
  ChebDomain domain = ChebDomain::standard;
};

// Interpolation data for the Hermite-type interpolants.
//   samples[n] = f at the n-th Clenshaw-Curtis point mapped to the domain
//   (c_n for standard, (c_n+1)/2 for shifted), n = 0..nu+1.
//   left/right/mid[j] = f^{(j)} at the left end, right end and centre
//   (centre only used by interp_p2), j = 0..s, derivatives taken with
//   respect to the domain variable x.
struct HermiteData {
  std::vector<cplx> samples;
  std::vector<cplx> left;
  std::vector<cplx> right;
  std::vector<cplx> mid;
};

inline constexpr int max_hermite_order = 8;

// c_n = cos(n pi / (nu+1)), n = 0..nu+1.
std::vector<double> cc_points(int nu);

// p_n = (2/(nu+1)) sum'' u_k cos(n k pi/(nu+1)) with nu+2 = u.size(),
// endpoint terms of the sum halved.
std::vector<cplx> idct1(const std::vector<cplx>& u);
// Inverse of idct1: u_k = sum'' p_n cos(n k pi/(nu+1)).
std::vector<cplx> dct1(const std::vector<cplx>& p);

// T_n^{(j)}(x) for x in {-1, 0, 1}.
double cheb_deriv_value(int n, int j, int point);

// Degree 2s+nu+1 interpolant on [0,1] matching the samples and the first s
// derivatives at both endpoints. Requires nu >= max(1, 2s). If the
// derivative lists do not cover orders up to s, s is forced to 0.
ChebCoeffs interp_p1(const HermiteData& data, int s, int nu);

// Degree 3s+nu+1 interpolant on [-1,1] additionally matching the first s
// derivatives at 0. Requires nu odd and nu >= max(1, 3s).
ChebCoeffs interp_p2(const HermiteData& data, int s, int nu);

// Clenshaw evaluation of sum c_n T_n(t) with t = x (standard) or 2x-1 (shifted).
cplx eval_cheb(const ChebCoeffs& c, double x);
cplx eval_cheb(const ChebCoeffs& c, cplx x);

// T_n(x) for complex x by the three-term recurrence.
cplx cheb_t(int n, cplx x);

}  // namespace hfilon
