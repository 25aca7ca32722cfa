#pragma once
// Chebyshev moments sigma_n = int_{-1}^1 T_n(x) H0(omega d(x)) exp(i omega beta x) dx,
// d(x) = sqrt((x - alpha beta)^2 + alpha^2 (1 - beta^2)).

#include <array>
#include <vector>

#include "hfilon/gaussrules.hpp"
#include "hfilon/moment_table.hpp"

namespace hfilon {

struct Params2 {
  double omega = 1.0;
  double alpha = 0.5;
  double beta = 0.0;
};

inline constexpr double sigma2_oracle_floor = 0.5;
// Below this frequency compute_sigma2 takes the whole table from the oracle:
// the steepest-descent integrands vary on the scale omega and Gauss rules
// with <= 200 nodes stop resolving them.
inline constexpr double sigma2_table_oracle_floor = 4.0;

// Node count used by compute_sigma2: max(requested, min(200, ceil(750 / omega))).
int nsd_nodes_sigma2(double omega, int requested);

// Coefficients c_k, k = 0..14, of sum_k c_k sigma_{n-k} = 0 (divided by n^2),
// with sigma_{-n} = sigma_n. n != 0.
std::array<cplx, 15> rec_coeffs_sigma2(double n, const Params2& p);

struct PhaseValue {
  cplx g;   // i (d(x) + beta x)
  cplx dg;  // g'(x)
};

// d(x) is the principal root of the quadratic, so Re d >= 0 with cuts on
// {Re x = alpha beta, |Im x| > alpha sqrt(1 - beta^2)}. Throws on the cuts.
PhaseValue phase_g(cplx x, const Params2& p);
cplx phase_g2_at_saddle(const Params2& p);  // g''(0)

// Steepest-descent pieces: C-1 leaves x = -1, C1 leaves x = 1, C0+/C0- leave
// the saddle x = 0 into Re x > 0 / Re x < 0.
enum class Contour { cm1, c0plus, c0minus, c1 };

// Solves g(x) = target by continuation from the contour's start point along
// the straight segment in g-space. Throws if Newton fails or the path hits a cut.
cplx g_inverse_on_contour(cplx target, Contour c, const Params2& p);

// sigma_0..sigma_nmax by steepest descent with Gauss-Laguerre (endpoint
// contours) and Gauss-Hermite (saddle contour). Below sigma2_oracle_floor the
// adaptive oracle is used instead.
std::vector<cplx> nsd_moments_sigma2(long nmax, const Params2& p, int gl_nodes = default_gl_nodes,
                                     int gh_nodes = default_gh_nodes);
cplx nsd_moment_sigma2(long n, const Params2& p, int gl_nodes = default_gl_nodes,
                       int gh_nodes = default_gh_nodes);

// Degree-8 leading-order characteristic polynomial with C = omega / N,
// coefficients from lambda^8 down to lambda^0.
std::array<cplx, 9> char_poly_sigma2(double C, const Params2& p);
std::vector<cplx> char_roots_sigma2(double C, const Params2& p);

enum class Regime { forward_safe, bvp_required };

struct RegimeResult {
  Regime decision = Regime::forward_safe;
  std::vector<cplx> roots;  // the eight roots of the degree-8 factor
  double min_modulus = 0.0;
};

RegimeResult regime_test_sigma2(const Params2& p, long N, double eps = 1e-8);

// Leading large-n behaviour of sigma_n, n >= 2.
cplx tail_sigma2(long n, const Params2& p);

// Endpoint expansion sigma_n ~ leading + correction with the O(n^-2) and
// O(n^-4) terms; leading equals tail_sigma2. Used for the terminal block.
struct TailTerms2 {
  cplx leading;
  cplx correction;
};
TailTerms2 tail_terms_sigma2(long n, const Params2& p);

// Upper bound on the boundary-value length.
inline constexpr long sigma2_max_M = 400000;

// max(2N, N + 300), enlarged until the O(n^-4) tail term is below 3e-5
// relative at M, capped at sigma2_max_M.
long default_M_sigma2(const Params2& p, long N);

struct Sigma2Options {
  int gl_nodes = default_gl_nodes;
  int gh_nodes = default_gh_nodes;
  double eps = 1e-8;
  MomentPath path = MomentPath::automatic;
  // Forward path only: stop at the first overflow and return a shorter table.
  bool truncate_on_overflow = false;
  long M = 0;  // boundary-value length, 0 picks default_M_sigma2
};

MomentTable compute_sigma2(const Params2& p, long N, const Sigma2Options& opt = {});

}  // namespace hfilon
