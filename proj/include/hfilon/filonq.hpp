#pragma once
// Extended Filon-Clenshaw-Curtis rules for the two Hankel-kernel integrals
// and a plain FCC rule for exp(i omega x) kernels.

#include <functional>
#include <memory>
#include <vector>

#include "hfilon/moments1.hpp"
#include "hfilon/moments2.hpp"

namespace hfilon {

using RealToComplex = std::function<cplx(double)>;

struct AmplitudeSpec {
  RealToComplex f;
  std::vector<RealToComplex> derivs;  // derivs[j-1] = f^{(j)}
  int smoothness = -1;                // declared C^k class, -1 for analytic
};

struct QuadInfo {
  int s_used = 0;
  bool s_clamped = false;  // derivatives missing, s forced to 0
  long moments = 0;        // number of moments used
};

// Memoised moment tables keyed by kind, parameters and node counts. A stored
// table serves every request with N at most its own length. Concurrent
// lookups share the lock; insertion is exclusive.
class MomentCache {
 public:
  std::shared_ptr<const MomentTable> sigma1(const Params1& p, long N);
  std::shared_ptr<const MomentTable> sigma2(const Params2& p, long N);
  void clear();
  std::size_t size() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_ = make_impl();
  static std::shared_ptr<Impl> make_impl();
};

MomentCache& default_moment_cache();

// Q1_[s,nu][f] approximating int_0^1 f(x) H0(omega x) exp(i omega beta x) dx.
// Requires s >= 0 and nu >= max(1, 2s) for the s actually used.
cplx q1(const AmplitudeSpec& amp, int s, int nu, const Params1& p, QuadInfo* info = nullptr,
        MomentCache& cache = default_moment_cache());

// Q2_[s,nu][f] approximating the shifted-kernel integral over [-1, 1].
// Requires nu odd and nu >= max(1, 3s) for the s actually used.
cplx q2(const AmplitudeSpec& amp, int s, int nu, const Params2& p, QuadInfo* info = nullptr,
        MomentCache& cache = default_moment_cache());

// mu_n = int_{-1}^1 T_n(t) exp(i k t) dt, n = 0..nmax.
std::vector<cplx> exp_moments(double k, long nmax);

// int_a^b f(x) exp(i omega x) dx by Clenshaw-Curtis interpolation of f at
// nu + 2 points and exact moments. Requires nu >= 1 and a < b.
cplx fcc_exp(const RealToComplex& f, int nu, double omega, double a, double b);

}  // namespace hfilon
