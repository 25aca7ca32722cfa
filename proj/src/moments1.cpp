#include "hfilon/moments1.hpp"

#include <cmath>
#include <stdexcept>

#include "hfilon/oracle.hpp"
#include "hfilon/recsolve.hpp"
#include "hfilon/specfun.hpp"

namespace hfilon {

namespace {

constexpr cplx I(0.0, 1.0);

bool is_pm1(double beta) { return beta == 1.0 || beta == -1.0; }

// int_0^inf g(t/omega) t^{-1/2} e^{-t} dt = int_R g(z^2/omega) e^{-z^2} dz.
template <class G>
cplx gauss_integral(const QuadRule& gh, double omega, G g) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < gh.nodes.size(); ++k)
    s += gh.weights[k] * g(gh.nodes[k] * gh.nodes[k] / omega);
  return s;
}

std::array<cplx, 4> sigma_from_rho(const std::array<cplx, 4>& r) {
  return {r[0], 2.0 * r[1] - r[0], 8.0 * r[2] - 8.0 * r[1] + r[0],
          32.0 * r[3] - 48.0 * r[2] + 18.0 * r[1] - r[0]};
}

cplx oracle_sigma1(long n, const Params1& p) {
  const ComplexFn amp = [n](double x) { return cplx(cheb_t_real(static_cast<int>(n), 2.0 * x - 1.0)); };
  ToleranceSpec tol;
  tol.rel_tol = 1e-13;
  tol.abs_tol = 1e-17;
  return reference_I1(amp, p.omega, p.beta, tol, 4.0 * n).value;
}

cplx oracle_rho(int k, const Params1& p) {
  const ComplexFn amp = [k](double x) { return cplx(std::pow(x, k)); };
  ToleranceSpec tol;
  tol.rel_tol = 1e-14;
  tol.abs_tol = 1e-17;
  return reference_I1(amp, p.omega, p.beta, tol).value;
}

// Relation at index n with reflection, solved for sigma_n. Requires all
// sigma_k, k < n, present in s.
cplx solve_relation_top(double n_rel, long target, const Params1& p, const std::vector<cplx>& s,
                        int first_k, int last_k) {
  const auto c = rec_coeffs_sigma1(n_rel, p);
  cplx diag = 0.0, acc = 0.0;
  for (int k = first_k; k <= last_k; ++k) {
    const long idx = std::labs(static_cast<long>(n_rel) - k);
    if (idx == target)
      diag += c[k];
    else
      acc += c[k] * s.at(idx);
  }
  if (std::abs(diag) == 0.0) throw std::runtime_error("compute_sigma1: degenerate direct relation");
  return -acc / diag;
}

}  // namespace

std::array<cplx, 9> rec_coeffs_sigma1(double n, const Params1& p) {
  if (n == 0.0) throw std::invalid_argument("rec_coeffs_sigma1: n must be nonzero");
  const double w = p.omega, b = p.beta;
  const double w2q = w * w * (1.0 - b * b);  // omega^2 (1 - beta^2)
  const cplx iwb = I * w * b;
  const double n1 = 1.0 / n, n2 = 1.0 / (n * n);
  return {w2q / 4.0 * n2,
          iwb * (2.0 * n1 - n2),
          4.0 - 8.0 * n1 + (-w2q + 2.0 * iwb + 4.0) * n2,
          (-6.0 * iwb + 8.0) * n1 + (17.0 * iwb - 16.0) * n2,
          -8.0 + 64.0 * n1 + (3.0 * w2q - 8.0 * iwb - 208.0) * (0.5 * n2),
          (6.0 * iwb - 8.0) * n1 + (-31.0 * iwb + 48.0) * n2,
          4.0 - 56.0 * n1 + (-w2q + 2.0 * iwb + 196.0) * n2,
          iwb * (-2.0 * n1 + 15.0 * n2),
          w2q / 4.0 * n2};
}

InitialMoments1 initial_moments_sigma1(const Params1& p, int gh_nodes) {
  const double w = p.omega, b = p.beta;
  if (!(w > 0.0)) throw std::invalid_argument("initial_moments_sigma1: omega must be positive");
  InitialMoments1 out;
  if (w < sigma1_oracle_floor) {
    for (int k = 0; k < 4; ++k) out.rho[k] = oracle_rho(k, p);
    out.sigma = sigma_from_rho(out.rho);
    out.oracle_fallback = true;
    return out;
  }
  const QuadRule gh = hermite_rule(gh_nodes);
  const double pre = -2.0 / (pi * w);
  const double rw = std::sqrt(w);
  std::array<cplx, 4>& r = out.rho;

  if (b == -1.0) {
    const auto S = [](cplx t) { return std::sqrt(2.0 * I - t); };
    r[0] = pre * (I * rw * gauss_integral(gh, w, [&](double t) { return S(t); }) + 1.0);
    r[1] = pre *
           (-I / 3.0 * std::pow(w, 1.5) *
                gauss_integral(gh, w, [&](double t) { return (-I - t) * S(t); }) +
            1.0 / 3.0) /
           (I * w);
    r[2] = pre *
           (std::pow(w, 2.5) * I / 15.0 *
                gauss_integral(gh, w,
                               [&](double t) { return S(t) * (2.0 * t * t + 2.0 * I * t - 3.0); }) +
            4.0 / 15.0) /
           (-w * w);
    // sigma_3 from the relation at n = 4, which involves only sigma_0..sigma_3
    // once sigma_{-k} = sigma_k and c_0 = c_8 = 0.
    const std::array<cplx, 4> s = sigma_from_rho({r[0], r[1], r[2], cplx(0.0)});
    const auto c = rec_coeffs_sigma1(4.0, p);
    const cplx s3 = -(c[2] * s[2] + c[3] * s[1] + c[4] * s[0] + c[5] * s[1] + c[6] * s[2]) /
                    (c[1] + c[7]);
    r[3] = (s3 + r[0] - 18.0 * r[1] + 48.0 * r[2]) / 32.0;
    out.sigma = {s[0], s[1], s[2], s3};
    return out;
  }

  // f_k(t) = d^k/dbeta^k f_beta(t) = (-1)^k k! / (sqrt(2i - t) (1 + beta + i t)^{k+1}).
  const auto fk = [b](int k, double t) {
    const cplx d = 1.0 + b + I * t;
    const double fact[4] = {1.0, -1.0, 2.0, -6.0};
    return fact[k] / (std::sqrt(2.0 * I - t) * std::pow(d, k + 1));
  };
  const cplx E = std::exp(I * (b + 1.0) * w);
  const cplx G0 = gauss_integral(gh, w, [&](double t) { return fk(0, t); });
  const cplx G1 = gauss_integral(gh, w, [&](double t) { return I * w * fk(0, t) + fk(1, t); });
  const cplx G2 = gauss_integral(
      gh, w, [&](double t) { return -w * w * fk(0, t) + 2.0 * I * w * fk(1, t) + fk(2, t); });
  const cplx G3 = gauss_integral(gh, w, [&](double t) {
    return -I * w * w * w * fk(0, t) - 3.0 * w * w * fk(1, t) + 3.0 * I * w * fk(2, t) + fk(3, t);
  });

  cplx c0, c1, c2, c3;
  if (b == 1.0) {
    c0 = -1.0;
    c1 = 1.0 / 3.0;
    c2 = -4.0 / 15.0;
    c3 = -12.0 / 35.0;
  } else {
    const cplx q(b * b - 1.0, 0.0);
    const auto sq = [&](double e) { return std::pow(q, e); };
    cplx at;
    double s;
    if (b > -1.0) {
      at = std::atanh(std::sqrt(cplx((b - 1.0) / (b + 1.0), 0.0)));
      s = 1.0;
    } else {
      const double x = std::sqrt((b - 1.0) / (b + 1.0));
      at = cplx(0.5 * std::log((x + 1.0) / (x - 1.0)), pi / 2.0);
      s = -1.0;
    }
    c0 = -s * 2.0 * at / sq(0.5);
    c1 = 1.0 / (1.0 - b * b) + s * 2.0 * b * at / sq(1.5);
    c2 = 3.0 * b / sq(2.0) - s * (4.0 * b * b + 2.0) * at / sq(2.5);
    c3 = (11.0 * b * b + 4.0) / sq(3.0) - s * 6.0 * b * (2.0 * b * b + 3.0) * at / sq(3.5);
  }
  const double rwi = 1.0 / rw;
  r[0] = pre * (I * rwi * E * G0 + c0);
  r[1] = pre * (I * rwi * E * G1 + c1) / (I * w);
  r[2] = pre * (I * rwi * E * G2 + c2) / (-w * w);
  r[3] = (-2.0 * I / pi * std::pow(w, -1.5) * E * G3 + 2.0 / (pi * w) * c3) / (-I * w * w * w);
  out.sigma = sigma_from_rho(r);
  return out;
}

cplx tail_sigma1(long n, const Params1& p) {
  if (n < 2) throw std::invalid_argument("tail_sigma1: requires n >= 2");
  const double nn = static_cast<double>(n);
  const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
  const cplx h = hankel1_0(cplx(p.omega, 0.0)) * std::exp(I * p.omega * p.beta);
  return std::log(nn) / (nn * nn) * (2.0 * I * sgn / pi) +
         (-sgn / 2.0 - I * sgn * (std::log(p.omega / 8.0) + 2.0 - euler_gamma) / pi - h / 2.0) /
             (nn * nn);
}

double cutoff_sigma1(const Params1& p) {
  if (is_pm1(p.beta)) return p.omega;
  return p.omega * std::min(std::abs(1.0 - p.beta), std::abs(1.0 + p.beta)) / 2.0;
}

CharRoots char_roots_sigma1(double C, double beta) {
  if (!(C > 0.0)) throw std::invalid_argument("char_roots_sigma1: C must be positive");
  CharRoots out;
  out.roots = {-1.0, -1.0, 1.0, 1.0};
  for (double sgn : {-1.0, 1.0}) {
    const double d = beta + sgn;  // beta - 1 or beta + 1
    if (d == 0.0) {
      out.degenerate = true;
      continue;
    }
    const cplx r = std::sqrt(cplx(C * C * d * d - 4.0, 0.0));
    out.roots.push_back((2.0 * I + r) / (C * d));
    out.roots.push_back((2.0 * I - r) / (C * d));
  }
  return out;
}

long default_M_sigma1(const Params1& p, long N) {
  const double spread = p.omega * std::max(std::abs(1.0 - p.beta), std::abs(1.0 + p.beta)) / 2.0;
  return std::max(2 * N, static_cast<long>(std::ceil(1.5 * spread)) + 200);
}

int gauss_nodes_sigma1(double omega, int requested) {
  const int scaled = static_cast<int>(std::ceil(800.0 / omega));
  return std::max(requested, std::min(200, scaled));
}

MomentTable compute_sigma1(const Params1& p, long N, const Sigma1Options& opt) {
  if (N < 0) throw std::invalid_argument("compute_sigma1: N must be >= 0");
  if (!(p.omega > 0.0)) throw std::invalid_argument("compute_sigma1: omega must be positive");
  MomentTable t;
  t.kind = MomentKind::sigma1;
  t.omega = p.omega;
  t.beta = p.beta;

  if (p.omega < sigma1_table_oracle_floor) {
    t.values.resize(N + 1);
    for (long n = 0; n <= N; ++n) t.values[n] = oracle_sigma1(n, p);
    add_range(t, MomentMethod::oracle, 0, N);
    return t;
  }

  const InitialMoments1 ic = initial_moments_sigma1(p, gauss_nodes_sigma1(p.omega, opt.gh_nodes));
  std::vector<cplx> s(ic.sigma.begin(), ic.sigma.end());
  const bool pm1 = is_pm1(p.beta);
  if (N <= 3) {
    s.resize(N + 1);
    t.values = s;
    add_range(t, MomentMethod::gaussian_ic, 0, N);
    return t;
  }

  // Recurrence in the generic form: relation at n = n' + shift.
  RecurrenceSpec spec;
  if (pm1) {
    spec.order = 6;
    spec.coeff = [p](long np, int l) { return rec_coeffs_sigma1(np + 7.0, p)[7 - l]; };
  } else {
    spec.order = 8;
    spec.coeff = [p](long np, int l) { return rec_coeffs_sigma1(np + 8.0, p)[8 - l]; };
  }

  // Direct values from the low relations, with sigma_{-n} = sigma_n.
  const int n_direct = spec.order;  // sigma_0..sigma_{order-1} seed the propagation
  for (long k = 4; k < n_direct; ++k) {
    if (pm1)
      s.push_back(solve_relation_top(k + 1.0, k, p, s, 1, 7));
    else
      s.push_back(solve_relation_top(static_cast<double>(k), k, p, s, 0, 8));
  }

  const bool forward = opt.path == MomentPath::forward_only ||
                       (opt.path == MomentPath::automatic && N <= cutoff_sigma1(p));
  if (forward) {
    if (N < static_cast<long>(s.size())) {
      s.resize(N + 1);
    } else {
      s = forward_propagate(spec, s, N, opt.truncate_on_overflow);
    }
    t.values = s;
    add_range(t, MomentMethod::gaussian_ic, 0, 3);
    add_range(t, MomentMethod::forward, 4, t.N());
    return t;
  }

  const int j = pm1 ? 5 : 6;
  const long M = std::max(opt.M > 0 ? opt.M : default_M_sigma1(p, N), N + 2L * spec.order + 1);
  BoundaryConditions bc;
  bc.initial.assign(s.begin(), s.begin() + j);
  for (long n = M - (spec.order - j) + 1; n <= M; ++n) bc.terminal.push_back(tail_sigma1(n, p));
  BvpDiagnostics diag;
  std::vector<cplx> y = solve_oliver_bvp(spec, bc, M, &diag);
  y.resize(N + 1);
  t.values = y;
  t.M = M;
  t.bvp_rcond = diag.rcond;
  t.bvp_residual = diag.max_residual;
  add_range(t, MomentMethod::gaussian_ic, 0, 3);
  add_range(t, MomentMethod::forward, 4, std::min<long>(j - 1, N));
  add_range(t, MomentMethod::oliver_bvp, j, N);
  return t;
}

}  // namespace hfilon
