#pragma once
// Chebyshev moments sigma_n = int_0^1 T_n(2x-1) H0(omega x) exp(i omega beta x) dx.

#include <array>
#include <vector>

#include "hfilon/gaussrules.hpp"
#include "hfilon/moment_table.hpp"

namespace hfilon {

struct Params1 {
  double omega = 1.0;
  double beta = 0.0;
};

// Below this frequency the whole table comes from the adaptive oracle.
inline constexpr double sigma1_oracle_floor = 0.5;
// Below this frequency compute_sigma1 takes the whole table from the oracle:
// Gauss-Hermite needs far more nodes there and the recurrence amplifies the
// remaining error by up to 1e3.
inline constexpr double sigma1_table_oracle_floor = 4.0;

// Node count used by compute_sigma1: max(requested, min(200, ceil(800 / omega))).
int gauss_nodes_sigma1(double omega, int requested);

// Coefficients c_k, k = 0..8, of sum_k c_k sigma_{n-k} = 0 (divided by n^2),
// with sigma_{-n} = sigma_n. n != 0.
std::array<cplx, 9> rec_coeffs_sigma1(double n, const Params1& p);

struct InitialMoments1 {
  std::array<cplx, 4> sigma;  // sigma_0..sigma_3
  std::array<cplx, 4> rho;    // int_0^1 x^k H0 e^{i omega beta x} dx
  bool oracle_fallback = false;
};

// Exponentially decaying contour integrals evaluated by Gauss-Hermite.
InitialMoments1 initial_moments_sigma1(const Params1& p, int gh_nodes = default_gh_nodes);

// Two-term large-n asymptotic of sigma_n, n >= 2.
cplx tail_sigma1(long n, const Params1& p);

// Index beyond which forward propagation turns exponentially unstable.
double cutoff_sigma1(const Params1& p);

struct CharRoots {
  std::vector<cplx> roots;
  bool degenerate = false;  // a pair was dropped because beta = +-1
};

// Roots of the leading-order characteristic equation with C = omega / n.
CharRoots char_roots_sigma1(double C, double beta);

struct Sigma1Options {
  int gh_nodes = default_gh_nodes;
  MomentPath path = MomentPath::automatic;
  // Forward path only: stop at the first overflow and return a shorter table.
  bool truncate_on_overflow = false;
  long M = 0;  // boundary-value length, 0 picks the default
};

// M used for the boundary-value solve when none is given.
long default_M_sigma1(const Params1& p, long N);

MomentTable compute_sigma1(const Params1& p, long N, const Sigma1Options& opt = {});

}  // namespace hfilon
