#include "hfilon/filonq.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

#include "hfilon/chebkit.hpp"
#include "hfilon/recsolve.hpp"
#include "hfilon/specfun.hpp"

namespace hfilon {

namespace {

constexpr cplx I(0.0, 1.0);

using CacheKey = std::tuple<int, double, double, double>;  // kind, omega, alpha, beta

int usable_s(const AmplitudeSpec& amp, int s, QuadInfo* info) {
  if (s < 0) throw std::invalid_argument("filon: s must be >= 0");
  int used = s;
  if (static_cast<int>(amp.derivs.size()) < s) used = 0;
  if (info) {
    info->s_used = used;
    info->s_clamped = used != s;
  }
  return used;
}

// Values f^{(0..s)}(x).
std::vector<cplx> jet(const AmplitudeSpec& amp, int s, double x) {
  std::vector<cplx> v{amp.f(x)};
  for (int j = 1; j <= s; ++j) v.push_back(amp.derivs[j - 1](x));
  return v;
}

cplx dot_moments(const std::vector<cplx>& coeffs, const std::vector<cplx>& moments) {
  cplx acc = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) acc += coeffs[n] * moments[n];
  return acc;
}

// Clenshaw-Curtis weights on cos(j pi / L), j = 0..L.
std::vector<double> cc_weights(int L) {
  std::vector<double> w(L + 1);
  for (int j = 0; j <= L; ++j) {
    double acc = 1.0;
    for (int m = 1; 2 * m <= L; ++m) {
      const double b = (2 * m == L) ? 1.0 : 2.0;
      acc -= b / (4.0 * m * m - 1.0) * std::cos(2.0 * m * j * pi / L);
    }
    w[j] = ((j == 0 || j == L) ? 1.0 : 2.0) / L * acc;
  }
  return w;
}

}  // namespace

struct MomentCache::Impl {
  mutable std::shared_mutex mutex;
  std::map<CacheKey, std::shared_ptr<const MomentTable>> tables;

  template <class Compute>
  std::shared_ptr<const MomentTable> get(const CacheKey& key, long N, Compute compute) {
    {
      std::shared_lock lock(mutex);
      const auto it = tables.find(key);
      if (it != tables.end() && it->second->N() >= N) return it->second;
    }
    auto fresh = std::make_shared<const MomentTable>(compute());
    std::unique_lock lock(mutex);
    auto& slot = tables[key];
    if (!slot || slot->N() < fresh->N()) slot = fresh;
    return slot->N() >= N ? slot : fresh;
  }
};

std::shared_ptr<MomentCache::Impl> MomentCache::make_impl() { return std::make_shared<Impl>(); }

std::shared_ptr<const MomentTable> MomentCache::sigma1(const Params1& p, long N) {
  return impl_->get({0, p.omega, 0.0, p.beta}, N, [&] { return compute_sigma1(p, N); });
}

std::shared_ptr<const MomentTable> MomentCache::sigma2(const Params2& p, long N) {
  return impl_->get({1, p.omega, p.alpha, p.beta}, N, [&] { return compute_sigma2(p, N); });
}

void MomentCache::clear() {
  std::unique_lock lock(impl_->mutex);
  impl_->tables.clear();
}

std::size_t MomentCache::size() const {
  std::shared_lock lock(impl_->mutex);
  return impl_->tables.size();
}

MomentCache& default_moment_cache() {
  static MomentCache cache;
  return cache;
}

cplx q1(const AmplitudeSpec& amp, int s, int nu, const Params1& p, QuadInfo* info,
        MomentCache& cache) {
  s = usable_s(amp, s, info);
  if (nu < std::max(1, 2 * s)) throw std::invalid_argument("q1: requires nu >= max(1, 2s)");
  HermiteData data;
  for (double c : cc_points(nu)) data.samples.push_back(amp.f((c + 1.0) / 2.0));
  data.left = jet(amp, s, 0.0);
  data.right = jet(amp, s, 1.0);
  const ChebCoeffs c = interp_p1(data, s, nu);
  const long N = static_cast<long>(c.coeffs.size()) - 1;
  if (info) info->moments = N + 1;
  return dot_moments(c.coeffs, cache.sigma1(p, N)->values);
}

cplx q2(const AmplitudeSpec& amp, int s, int nu, const Params2& p, QuadInfo* info,
        MomentCache& cache) {
  if (nu % 2 == 0) throw std::invalid_argument("q2: nu must be odd");
  s = usable_s(amp, s, info);
  if (nu < std::max(1, 3 * s)) throw std::invalid_argument("q2: requires nu >= max(1, 3s)");
  HermiteData data;
  for (double c : cc_points(nu)) data.samples.push_back(amp.f(c));
  data.left = jet(amp, s, -1.0);
  data.mid = jet(amp, s, 0.0);
  data.right = jet(amp, s, 1.0);
  const ChebCoeffs c = interp_p2(data, s, nu);
  const long N = static_cast<long>(c.coeffs.size()) - 1;
  if (info) info->moments = N + 1;
  return dot_moments(c.coeffs, cache.sigma2(p, N)->values);
}

std::vector<cplx> exp_moments(double k, long nmax) {
  if (nmax < 0) throw std::invalid_argument("exp_moments: nmax must be >= 0");
  std::vector<cplx> mu(nmax + 1);
  if (std::abs(k) < 1.0) {
    // exp(ikt) is resolved by degree ~30 here, so Clenshaw-Curtis with
    // nmax + 48 points is exact to rounding.
    const int L = static_cast<int>(nmax) + 48;
    const std::vector<double> w = cc_weights(L);
    for (int j = 0; j <= L; ++j) {
      const double t = std::cos(j * pi / L);
      const cplx e = w[j] * std::exp(I * k * t);
      double tm1 = 1.0, tn = t;
      for (long n = 0; n <= nmax; ++n) {
        const double val = n == 0 ? 1.0 : (n == 1 ? t : 2.0 * t * tn - tm1);
        if (n >= 2) {
          tm1 = tn;
          tn = val;
        }
        mu[n] += e * val;
      }
    }
    return mu;
  }
  const cplx ep = std::exp(I * k), em = std::exp(-I * k);
  const auto E = [&](long m) { return ep - ((m % 2 == 0) ? 1.0 : -1.0) * em; };
  mu[0] = E(0) / (I * k);
  if (nmax == 0) return mu;
  mu[1] = (ep + em - mu[0]) / (I * k);
  if (nmax == 1) return mu;

  // y_i = mu_{i+1}; relation i links mu_{n-1}, mu_n, mu_{n+1} with n = i + 2:
  // -(ik/(2(n-1))) mu_{n-1} + mu_n + (ik/(2(n+1))) mu_{n+1} = E_{n+1}/(2(n+1)) - E_{n-1}/(2(n-1)).
  RecurrenceSpec spec;
  spec.order = 2;
  spec.coeff = [k](long i, int l) -> cplx {
    const double n = i + 2.0;
    if (l == 0) return -I * k / (2.0 * (n - 1.0));
    if (l == 1) return 1.0;
    return I * k / (2.0 * (n + 1.0));
  };
  spec.rhs = [E](long i) {
    const long n = i + 2;
    return E(n + 1) / (2.0 * (n + 1)) - E(n - 1) / (2.0 * (n - 1));
  };

  // By parts with T_2' = 4 T_1.
  mu[2] = (E(2) - 4.0 * mu[1]) / (I * k);
  if (nmax == 2) return mu;

  // Forward propagation is stable while n <= |k|.
  const long nf = std::min<long>(nmax, static_cast<long>(std::floor(std::abs(k))));
  if (nf >= 3) {
    const std::vector<cplx> y = forward_propagate(spec, {mu[1], mu[2]}, nf - 1);
    for (long i = 2; i < static_cast<long>(y.size()); ++i) mu[i + 1] = y[i];
  }
  const long start = std::max<long>(2, nf);  // mu_start is known
  if (start >= nmax) return mu;
  const long M = std::max(nmax, static_cast<long>(std::ceil(std::abs(k)))) + 40;
  // Shift so that y_0 = mu_start.
  RecurrenceSpec tail = spec;
  const long off = start - 1;
  tail.coeff = [spec, off](long i, int l) { return spec.coeff(i + off, l); };
  tail.rhs = [spec, off](long i) { return spec.rhs(i + off); };
  BoundaryConditions bc;
  bc.initial = {mu[start]};
  const double Md = static_cast<double>(M);
  bc.terminal = {-(ep + ((M % 2 == 0) ? 1.0 : -1.0) * em) / (Md * Md - 1.0)};
  const std::vector<cplx> z = solve_oliver_bvp(tail, bc, M - start);
  for (long n = start + 1; n <= nmax; ++n) mu[n] = z[n - start];
  return mu;
}

cplx fcc_exp(const RealToComplex& f, int nu, double omega, double a, double b) {
  if (nu < 1) throw std::invalid_argument("fcc_exp: nu must be >= 1");
  if (!(a < b)) throw std::invalid_argument("fcc_exp: requires a < b");
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::vector<cplx> samples;
  for (double c : cc_points(nu)) samples.push_back(f(mid + half * c));
  std::vector<cplx> p = idct1(samples);
  p.front() *= 0.5;
  p.back() *= 0.5;
  const std::vector<cplx> mu = exp_moments(omega * half, static_cast<long>(p.size()) - 1);
  return half * std::exp(I * omega * mid) * dot_moments(p, mu);
}

}  // namespace hfilon
