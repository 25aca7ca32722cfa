#include "hfilon/moments2.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hfilon/chebkit.hpp"
#include "hfilon/oracle.hpp"
#include "hfilon/recsolve.hpp"
#include "hfilon/specfun.hpp"

namespace hfilon {

namespace {

constexpr cplx I(0.0, 1.0);

void check_params(const Params2& p) {
  if (!(p.omega > 0.0)) throw std::invalid_argument("sigma2: omega must be positive");
  if (!(p.alpha > 0.0)) throw std::invalid_argument("sigma2: alpha must be positive");
  if (!(std::abs(p.beta) < 1.0)) throw std::invalid_argument("sigma2: requires |beta| < 1");
}

cplx dist(cplx x, const Params2& p) {
  const cplx u = x - p.alpha * p.beta;
  return std::sqrt(u * u + p.alpha * p.alpha * (1.0 - p.beta * p.beta));
}

// Follows g^{-1} from (x0, g(x0)) through the targets in order. Predictor
// step along 1/g', Newton corrector, step halving when Newton fails or the
// corrected point lands far from the prediction (a jump to another sheet).
std::vector<cplx> track(cplx x0, const std::vector<cplx>& targets, const Params2& p,
                        const char* tag) {
  std::vector<cplx> out;
  out.reserve(targets.size());
  cplx x = x0;
  cplx gprev = phase_g(x0, p).g;
  for (const cplx T : targets) {
    int nsub = 1;
    while (true) {
      bool ok = true;
      cplx xx = x, tp = gprev;
      for (int k = 1; k <= nsub && ok; ++k) {
        const cplx tt = gprev + (T - gprev) * (static_cast<double>(k) / nsub);
        const cplx pred = xx + (tt - tp) / phase_g(xx, p).dg;
        cplx y = pred;
        try {
          for (int it = 0; it < 50; ++it) {
            const PhaseValue v = phase_g(y, p);
            const cplx dx = (v.g - tt) / v.dg;
            y -= dx;
            if (std::abs(dx) < 1e-15 * (1.0 + std::abs(y))) break;
          }
          const double res = std::abs(phase_g(y, p).g - tt);
          if (!(res <= 1e-12 * (1.0 + std::abs(tt))) ||
              std::abs(y - pred) > 0.25 * std::abs(pred - xx))
            ok = false;
        } catch (const std::domain_error&) {
          ok = false;
        }
        xx = y;
        tp = tt;
      }
      if (ok) {
        x = xx;
        break;
      }
      nsub *= 2;
      if (nsub > (1 << 16)) {
        std::ostringstream os;
        os << "steepest descent: contour " << tag << " tracking failed near x = " << x;
        throw std::runtime_error(os.str());
      }
    }
    gprev = T;
    out.push_back(x);
  }
  return out;
}

cplx saddle_scale(const Params2& p) {
  cplx c = std::sqrt(-2.0 / (p.omega * phase_g2_at_saddle(p)));
  if (c.real() < 0.0) c = -c;
  return c;
}

// Leaves the saddle from x0 (with g(x0) - g0 = tau0) towards each target,
// inserting intermediate targets g0 + 4^k tau0 so x roughly doubles per step;
// linear steps in g alone stall where g' vanishes.
std::vector<cplx> track_from_saddle(cplx x0, cplx tau0, const std::vector<cplx>& targets,
                                    const Params2& p, const char* tag) {
  const cplx g0 = phase_g(0.0, p).g;
  std::vector<cplx> chain;
  std::vector<int> keep;
  cplx reach = tau0;
  for (const cplx T : targets) {
    const cplx tau = T - g0;
    const double ratio = std::abs(tau) / std::abs(reach);
    if (ratio > 4.0) {
      const int steps = static_cast<int>(std::ceil(std::log(ratio) / std::log(4.0)));
      const cplx q = std::pow(tau / reach, 1.0 / steps);
      cplx cur = reach;
      for (int k = 1; k < steps; ++k) {
        cur *= q;
        chain.push_back(g0 + cur);
      }
    }
    keep.push_back(static_cast<int>(chain.size()));
    chain.push_back(T);
    if (std::abs(tau) > std::abs(reach)) reach = tau;
  }
  const auto xs = track(x0, chain, p, tag);
  std::vector<cplx> out;
  for (int k : keep) out.push_back(xs[k]);
  return out;
}

const char* contour_tag(Contour c) {
  switch (c) {
    case Contour::cm1: return "C-1";
    case Contour::c0plus: return "C0+";
    case Contour::c0minus: return "C0-";
    case Contour::c1: return "C1";
  }
  return "?";
}

cplx oracle_sigma2(long n, const Params2& p) {
  const ComplexFn amp = [n](double x) { return cplx(cheb_t_real(static_cast<int>(n), x)); };
  ToleranceSpec tol;
  tol.rel_tol = 1e-13;
  tol.abs_tol = 1e-17;
  return reference_I2(amp, p.omega, p.alpha, p.beta, tol, 2.0 * n).value;
}

}  // namespace

std::array<cplx, 15> rec_coeffs_sigma2(double n, const Params2& p) {
  if (n == 0.0) throw std::invalid_argument("rec_coeffs_sigma2: n must be nonzero");
  const double w = p.omega, a = p.alpha, b = p.beta;
  const double q = 1.0 - b * b, a2 = a * a, a3 = a2 * a, b2 = b * b, w2 = w * w;
  const double n1 = 1.0 / n, n2 = n1 * n1;
  const cplx i = I;
  return {
      w2 * q * n2,
      4.0 * i * b * w * n1 + (6.0 * w2 * a * b * (b2 - 1.0) - 2.0 * i * b * w) * n2,
      4.0 + (-24.0 * i * w * a * b2 - 8.0) * n1 +
          (w2 * (8.0 * a2 * b2 - 1.0) * q + 32.0 * i * w * a * b2 + 4.0) * n2,
      -24.0 * a * b + (16.0 * i * w * a2 * b * (2.0 * b2 + 1.0) + 88.0 * a * b) * n1 +
          (12.0 * w2 * a * b * q + i * w * b * (-80.0 * a2 * b2 - 24.0 * a2 + 12.0) - 80.0 * a * b) *
              n2,
      4.0 + 32.0 * a2 * b2 + 16.0 * a2 +
          (8.0 * i * w * a * b2 * (3.0 - 4.0 * a2) + 8.0 - 64.0 * a2 - 192.0 * a2 * b2) * n1 +
          (w2 * q * (-3.0) * (8.0 * a2 * b2 + 1.0) + w * (96.0 * i * a3 * b2 - 144.0 * i * a * b2) +
           288.0 * a2 * b2 + 48.0 * a2 - 44.0) *
              n2,
      -32.0 * a3 * b +
          (-2.0 * i * w * b * (32.0 * a2 * b2 + 16.0 * a2 + 6.0) + 224.0 * a3 * b - 176.0 * a * b) *
              n1 +
          (6.0 * w2 * a * b * q + i * w * b * (128.0 * a2 + 58.0 + 384.0 * a2 * b2) -
           384.0 * a3 * b + 592.0 * a * b) *
              n2,
      -8.0 - 16.0 * a2 - 32.0 * a2 * b2 +
          (48.0 * i * w * a * b2 * (1.0 + 2.0 * a2) + 576.0 * a2 * b2 + 192.0 * a2 + 128.0) * n1 +
          (w2 * q * (3.0 + 16.0 * a2 * b2) + i * w * a * b2 * (-544.0 * a2 - 224.0) -
           1952.0 * a2 * b2 - 432.0 * a2 - 344.0) *
              n2,
      64.0 * a3 * b + 48.0 * a * b + a * b * (-672.0 - 896.0 * a2) * n1 +
          (-24.0 * w2 * a * b * q + i * w * b * (16.0 * a2 - 160.0 * a2 * b2 - 24.0) +
           2880.0 * a3 * b + 1840.0 * a * b) *
              n2,
      -8.0 - 16.0 * a2 - 32.0 * a2 * b2 +
          (-48.0 * i * w * a * b2 * (1.0 + 2.0 * a2) + 320.0 * a2 * b2 + 256.0 * a2 + 96.0) * n1 +
          (w2 * q * (16.0 * a2 * b2 + 3.0) + i * w * a * b2 * (800.0 * a2 + 448.0) -
           160.0 * a2 * b2 - 880.0 * a2 - 120.0) *
              n2,
      -32.0 * a3 * b +
          (i * w * b * (12.0 + 64.0 * a2 * b2 + 32.0 * a2) + 672.0 * a3 * b + 176.0 * a * b) * n1 +
          (6.0 * w2 * a * b * q + i * w * b * (-512.0 * a2 * b2 - 110.0 - 320.0 * a2) -
           3520.0 * a3 * b - 1872.0 * a * b) *
              n2,
      4.0 + 32.0 * a2 * b2 + 16.0 * a2 +
          (8.0 * i * w * a * b2 * (4.0 * a2 - 3.0) - 120.0 - 704.0 * a2 * b2 - 384.0 * a2) * n1 +
          (w2 * q * (-24.0 * a2 * b2 - 3.0) + w * (192.0 * i * a * b2 - 352.0 * i * a3 * b2) +
           852.0 + 3872.0 * a2 * b2 + 2288.0 * a2) *
              n2,
      -24.0 * a * b + (-16.0 * i * w * a2 * b * (1.0 + 2.0 * b2) + 584.0 * a * b) * n1 +
          (12.0 * w2 * a * b * q + i * w * b * (12.0 + 368.0 * a2 * b2 + 200.0 * a2) -
           3552.0 * a * b) *
              n2,
      4.0 + (24.0 * i * w * a * b2 - 104.0) * n1 +
          (w2 * q * (8.0 * a2 * b2 - 1.0) - 304.0 * i * a * b2 * w + 676.0) * n2,
      -4.0 * i * b * w * n1 + (-6.0 * w2 * a * b * q + 54.0 * i * b * w) * n2,
      w2 * q * n2};
}

PhaseValue phase_g(cplx x, const Params2& p) {
  const double r = p.alpha * std::sqrt(1.0 - p.beta * p.beta);
  if (x.real() == p.alpha * p.beta && std::abs(x.imag()) > r)
    throw std::domain_error("phase_g: point on a branch cut");
  const cplx d = dist(x, p);
  if (d == cplx(0.0)) throw std::domain_error("phase_g: branch point");
  return {I * (d + p.beta * x), I * ((x - p.alpha * p.beta) / d + p.beta)};
}

cplx phase_g2_at_saddle(const Params2& p) { return I * (1.0 - p.beta * p.beta) / p.alpha; }

cplx g_inverse_on_contour(cplx target, Contour c, const Params2& p) {
  check_params(p);
  cplx x0;
  switch (c) {
    case Contour::cm1: x0 = -1.0; break;
    case Contour::c1: x0 = 1.0; break;
    case Contour::c0plus:
    case Contour::c0minus: {
      const cplx g0 = phase_g(0.0, p).g;
      const cplx tau = target - g0;
      if (std::abs(tau) == 0.0) return 0.0;
      // Local quadratic model started a small way along the segment.
      const cplx tau0 = tau * 1e-6;
      cplx x = std::sqrt(2.0 * tau0 / phase_g2_at_saddle(p));
      if ((c == Contour::c0plus) != (x.real() > 0.0)) x = -x;
      for (int it = 0; it < 50; ++it) {
        const PhaseValue v = phase_g(x, p);
        const cplx dx = (v.g - (g0 + tau0)) / v.dg;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      return track_from_saddle(x, tau0, {target}, p, contour_tag(c)).front();
    }
  }
  return track(x0, {target}, p, contour_tag(c)).front();
}

std::vector<cplx> nsd_moments_sigma2(long nmax, const Params2& p, int gl_nodes, int gh_nodes) {
  check_params(p);
  if (nmax < 0) throw std::invalid_argument("nsd_moments_sigma2: nmax must be >= 0");
  if (p.omega < sigma2_oracle_floor) {
    std::vector<cplx> out;
    for (long n = 0; n <= nmax; ++n) out.push_back(oracle_sigma2(n, p));
    return out;
  }
  const double w = p.omega;
  const QuadRule gl = laguerre_rule(gl_nodes);
  const QuadRule gh = hermite_rule(gh_nodes);

  std::vector<cplx> out(nmax + 1, cplx(0.0));
  // Accumulate weight * T_n(x) h0(omega d(x)) / g'(x) into out for every n.
  const auto accumulate = [&](const std::vector<cplx>& xs, const std::vector<double>& wts,
                              cplx factor) {
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const cplx x = xs[k];
      const PhaseValue v = phase_g(x, p);
      const cplx base = factor * wts[k] * h0_scaled(w * dist(x, p)) / v.dg;
      cplx tkm1 = 1.0, tk = x;
      for (long n = 0; n <= nmax; ++n) {
        const cplx tn = n == 0 ? cplx(1.0) : (n == 1 ? x : 2.0 * x * tk - tkm1);
        if (n >= 2) {
          tkm1 = tk;
          tk = tn;
        }
        out[n] += base * tn;
      }
    }
  };

  for (const double end : {-1.0, 1.0}) {
    const cplx gend = phase_g(end, p).g;
    std::vector<cplx> targets;
    for (double t : gl.nodes) targets.push_back(gend - t / w);
    const auto xs = track(end, targets, p, end < 0 ? "C-1" : "C1");
    const cplx factor = (end < 0 ? -1.0 : 1.0) / w * std::exp(w * gend);
    accumulate(xs, gl.weights, factor);
  }

  // Saddle contour: half-lines t > 0 on each side, each carrying weight 2t.
  const cplx g0 = phase_g(0.0, p).g;
  std::vector<cplx> targets;
  std::vector<double> wts;
  // Positive half by index: for odd rules the middle node is only zero to rounding.
  const std::size_t first_pos = gh.nodes.size() / 2 + gh.nodes.size() % 2;
  for (std::size_t k = first_pos; k < gh.nodes.size(); ++k) {
    const double t = gh.nodes[k];
    targets.push_back(g0 - t * t / w);
    wts.push_back(gh.weights[k] * 2.0 * t);
  }
  const cplx c = saddle_scale(p);
  const double t0 = std::min(1e-3, 0.5 * gh.nodes[first_pos]);
  const auto xp = track_from_saddle(c * t0, phase_g(c * t0, p).g - g0, targets, p, "C0+");
  const auto xm = track_from_saddle(-c * t0, phase_g(-c * t0, p).g - g0, targets, p, "C0-");
  // The two halves meet continuously at the saddle.
  if (!(xp.front().real() > 0.0) || !(xm.front().real() < 0.0))
    throw std::runtime_error("steepest descent: saddle branches not separated");
  const cplx sfac = -1.0 / w * std::exp(w * g0);
  accumulate(xp, wts, sfac);
  accumulate(xm, wts, -sfac);
  if (gh.nodes.size() % 2 == 1) {
    // Middle node t = 0: x'(0) = c, so the weight is w_mid c e^{w g0}.
    const cplx base = std::exp(w * g0) * c * gh.weights[gh.nodes.size() / 2] *
                      h0_scaled(w * dist(0.0, p));
    for (long n = 0; n <= nmax; n += 4) out[n] += base;
    for (long n = 2; n <= nmax; n += 4) out[n] -= base;
  }
  return out;
}

cplx nsd_moment_sigma2(long n, const Params2& p, int gl_nodes, int gh_nodes) {
  return nsd_moments_sigma2(n, p, gl_nodes, gh_nodes).back();
}

std::array<cplx, 9> char_poly_sigma2(double C, const Params2& p) {
  const double a = p.alpha, b = p.beta, q = b * b - 1.0;
  const cplx i = I;
  return {(1.0 - b * b) * C * C,
          4.0 * a * b * q * C * C + 4.0 * i * b * C,
          4.0 - 16.0 * i * a * b * b * C,
          16.0 * i * a * a * b * C - 16.0 * a * b + 4.0 * i * b * C - 4.0 * a * b * q * C * C,
          16.0 * a * a + 8.0 + 2.0 * q * C * C,
          -16.0 * i * a * a * b * C - 4.0 * a * b * q * C * C - 4.0 * i * b * C - 16.0 * a * b,
          4.0 + 16.0 * i * a * b * b * C,
          4.0 * a * b * q * C * C - 4.0 * i * b * C,
          (1.0 - b * b) * C * C};
}

std::vector<cplx> char_roots_sigma2(double C, const Params2& p) {
  if (!(C > 0.0)) throw std::invalid_argument("char_roots_sigma2: C must be positive");
  const auto c = char_poly_sigma2(C, p);
  Eigen::Matrix<cplx, 8, 8> comp = Eigen::Matrix<cplx, 8, 8>::Zero();
  for (int k = 0; k < 8; ++k) comp(0, k) = -c[k + 1] / c[0];
  for (int k = 1; k < 8; ++k) comp(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix<cplx, 8, 8>> es(comp, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("char_roots_sigma2: eigensolver failed");
  std::vector<cplx> roots(8);
  for (int k = 0; k < 8; ++k) roots[k] = es.eigenvalues()(k);
  return roots;
}

RegimeResult regime_test_sigma2(const Params2& p, long N, double eps) {
  check_params(p);
  if (N < 7) throw std::invalid_argument("regime_test_sigma2: requires N >= 7");
  RegimeResult r;
  r.roots = char_roots_sigma2(p.omega / static_cast<double>(N), p);
  const double ab = p.alpha * p.beta;
  const cplx s = std::sqrt(cplx(ab * ab - 1.0, 0.0));
  double m = std::min(std::abs(ab + s), std::abs(ab - s));
  for (const cplx z : r.roots) m = std::min(m, std::abs(z));
  r.min_modulus = m;
  r.decision = m > 1.0 - eps ? Regime::forward_safe : Regime::bvp_required;
  return r;
}

cplx tail_sigma2(long n, const Params2& p) {
  if (n < 2) throw std::invalid_argument("tail_sigma2: requires n >= 2");
  const double a = p.alpha, b = p.beta, w = p.omega;
  const double nn = static_cast<double>(n);
  const double sgn = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
  const cplx hp = hankel1_0(cplx(w * std::sqrt(1.0 + 2.0 * a * b + a * a), 0.0));
  const cplx hm = hankel1_0(cplx(w * std::sqrt(1.0 - 2.0 * a * b + a * a), 0.0));
  return (sgn * hp * std::exp(-I * w * b) - hm * std::exp(I * w * b)) / (nn * nn);
}

TailTerms2 tail_terms_sigma2(long n, const Params2& p) {
  if (n < 2) throw std::invalid_argument("tail_terms_sigma2: requires n >= 2");
  const double nn = static_cast<double>(n);
  const double sgn = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
  const auto F = [&p](double x) {
    return hankel1_0(cplx(p.omega * dist(x, p).real(), 0.0)) * std::exp(I * p.omega * p.beta * x);
  };
  // Fourth-order central difference; F is analytic near +-1 on the scale 1/omega.
  const double h = 1e-3 / (1.0 + p.omega * (1.0 + std::abs(p.beta)));
  const auto dF = [&](double x) {
    return (8.0 * (F(x + h) - F(x - h)) - (F(x + 2 * h) - F(x - 2 * h))) / (12.0 * h);
  };
  const cplx fp = F(1.0), fm = F(-1.0);
  TailTerms2 t;
  t.leading = -(fp + sgn * fm) / (nn * nn);
  t.correction = -(fp + 3.0 * dF(1.0) + sgn * (fm - 3.0 * dF(-1.0))) / (nn * nn * nn * nn);
  return t;
}

long default_M_sigma2(const Params2& p, long N) {
  long M = std::max(2 * N, N + 300);
  // The remainder after two tail terms is about (correction / leading)^2 relative.
  const double target = 3e-5;
  const auto ratio = [&p](long m) {
    const TailTerms2 t = tail_terms_sigma2(m, p);
    const TailTerms2 u = tail_terms_sigma2(m + 1, p);
    return std::max(std::abs(t.correction) / std::abs(t.leading),
                    std::abs(u.correction) / std::abs(u.leading));
  };
  const double r = ratio(M);
  if (r > target) M = static_cast<long>(std::ceil(M * std::sqrt(r / target)));
  return std::min(M, sigma2_max_M);
}

int nsd_nodes_sigma2(double omega, int requested) {
  const int scaled = static_cast<int>(std::ceil(750.0 / omega));
  return std::max(requested, std::min(200, scaled));
}

MomentTable compute_sigma2(const Params2& p, long N, const Sigma2Options& opt) {
  check_params(p);
  if (N < 0) throw std::invalid_argument("compute_sigma2: N must be >= 0");
  MomentTable t;
  t.kind = MomentKind::sigma2;
  t.omega = p.omega;
  t.alpha = p.alpha;
  t.beta = p.beta;

  if (p.omega < sigma2_table_oracle_floor) {
    t.values.resize(N + 1);
    for (long n = 0; n <= N; ++n) t.values[n] = oracle_sigma2(n, p);
    add_range(t, MomentMethod::oracle, 0, N);
    return t;
  }

  const MomentMethod ic = MomentMethod::gaussian_ic;
  std::vector<cplx> s =
      nsd_moments_sigma2(std::min<long>(N, 6), p, nsd_nodes_sigma2(p.omega, opt.gl_nodes),
                         nsd_nodes_sigma2(p.omega, opt.gh_nodes));
  if (N <= 6) {
    t.values = s;
    add_range(t, ic, 0, N);
    return t;
  }

  RecurrenceSpec spec;
  spec.order = 14;
  spec.coeff = [p](long np, int l) { return rec_coeffs_sigma2(np + 14.0, p)[14 - l]; };

  // sigma_7..sigma_13 from the relations n = 7..13 with sigma_{-n} = sigma_n.
  for (long n = 7; n < 14; ++n) {
    const auto c = rec_coeffs_sigma2(static_cast<double>(n), p);
    cplx diag = 0.0, acc = 0.0;
    for (int k = 0; k <= 14; ++k) {
      const long idx = std::labs(n - k);
      if (idx == n)
        diag += c[k];
      else
        acc += c[k] * s[idx];
    }
    s.push_back(-acc / diag);
  }

  bool forward;
  if (opt.path == MomentPath::automatic)
    forward = regime_test_sigma2(p, N, opt.eps).decision == Regime::forward_safe;
  else
    forward = opt.path == MomentPath::forward_only;

  if (forward) {
    if (N < static_cast<long>(s.size()))
      s.resize(N + 1);
    else
      s = forward_propagate(spec, s, N, opt.truncate_on_overflow);
    t.values = s;
    add_range(t, ic, 0, 6);
    add_range(t, MomentMethod::forward, 7, t.N());
    return t;
  }

  const int j = 9;
  const long M = std::max(opt.M > 0 ? opt.M : default_M_sigma2(p, N), N + 29L);
  BoundaryConditions bc;
  bc.initial.assign(s.begin(), s.begin() + j);
  for (long n = M - 4; n <= M; ++n) {
    const TailTerms2 tt = tail_terms_sigma2(n, p);
    bc.terminal.push_back(tt.leading + tt.correction);
  }
  BvpDiagnostics diag;
  std::vector<cplx> y = solve_oliver_bvp(spec, bc, M, &diag);
  y.resize(N + 1);
  t.values = y;
  t.M = M;
  t.bvp_rcond = diag.rcond;
  t.bvp_residual = diag.max_residual;
  add_range(t, ic, 0, 6);
  add_range(t, MomentMethod::forward, 7, std::min<long>(8, N));
  add_range(t, MomentMethod::oliver_bvp, 9, N);
  return t;
}

}  // namespace hfilon
