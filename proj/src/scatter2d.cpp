#include "hfilon/scatter2d.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hfilon/filonq.hpp"
#include "hfilon/moments1.hpp"
#include "hfilon/specfun.hpp"

namespace hfilon {

namespace {

constexpr cplx I(0.0, 1.0);

std::vector<double> union_breaks(const GradedMesh& mesh) {
  std::vector<double> u(mesh.points_plus);
  u.insert(u.end(), mesh.points_minus.begin(), mesh.points_minus.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

// sigma_0 for int_0^L H0(omega x) exp(i omega beta x) dx with L > 0.
cplx half_line_sigma0(double omega, double beta, double L) {
  return L * compute_sigma1({omega * L, beta}, 0).values[0];
}

// Pieces are integrated in the offset d = s - a from the left end of the cell,
// so that cells of width ~1e-7 near the screen edges keep full relative
// accuracy; y enters only through yd = y - a.
struct PieceContext {
  const SplineBasis* basis;
  int index, cell, sign;
  double omega, y, a, yd;
};

double piece_poly(const PieceContext& c, double d) {
  return c.basis->eval_offset(c.index, c.cell, d);
}

// int over s in [y, y + X] (dir = +1) or [y - X, y] (dir = -1) of
// P(s) exp(i sign omega (s - y)) H0(omega |s - y|) ds, by Q1 with beta = +-1.
cplx half_piece_q1(const PieceContext& c, int dir, double X, MomentCache& cache) {
  if (!(X > 0.0)) return 0.0;
  AmplitudeSpec amp;
  amp.f = [&c, dir, X](double t) { return cplx(piece_poly(c, c.yd + dir * X * t), 0.0); };
  return X * q1(amp, 0, 3, {c.omega * X, static_cast<double>(dir * c.sign)}, nullptr, cache);
}

// Same integral by the adaptive half-line oracle.
cplx half_piece_adaptive(const PieceContext& c, int dir, double X, const ToleranceSpec& tol) {
  if (!(X > 0.0)) return 0.0;
  const ComplexFn amp = [&c, dir, X](double t) {
    return cplx(piece_poly(c, c.yd + dir * X * t), 0.0);
  };
  return X * reference_I1(amp, c.omega * X, dir * c.sign, tol).value;
}

template <class Half>
cplx split_at_y(const PieceContext& c, double h, Half half) {
  const double yd = c.yd;
  cplx acc = 0.0;
  // Right of y: x = s - y over [max(-yd, 0), h - yd]; left: x = y - s over [max(yd - h, 0), yd].
  if (h > yd) acc += half(1, h - yd) - half(1, std::max(-yd, 0.0));
  if (yd > 0.0) acc += half(-1, yd) - half(-1, std::max(yd - h, 0.0));
  return std::exp(I * (c.sign * c.omega * c.y)) * acc;
}

cplx singular_piece(const PieceContext& c, double h, MomentCache& cache) {
  return split_at_y(c, h, [&](int dir, double X) { return half_piece_q1(c, dir, X, cache); });
}

cplx nonosc_piece(const PieceContext& c, double h, const ToleranceSpec& tol) {
  if (c.yd >= 0.0 && c.yd <= h)
    return split_at_y(c, h, [&](int dir, double X) { return half_piece_adaptive(c, dir, X, tol); });
  // exp(i sign omega s) H0(omega |s - y|) = h0 exp(i omega (sign s + |s - y|)); the phase is
  // constant or varies by at most omega0 over the cell.
  const ComplexFn f = [&c](double d) {
    const double r = std::abs(d - c.yd);
    return piece_poly(c, d) * h0_scaled(cplx(c.omega * r, 0.0)) *
           std::exp(I * (c.omega * (c.sign * (c.a + d) + r)));
  };
  return integrate_adaptive(f, {0.0, h}, tol).value;
}

// Panels on [0, h] graded geometrically away from the point yd outside it.
std::vector<double> graded_panels(double h, double yd) {
  std::vector<double> br;
  if (yd <= 0.0) {
    br.push_back(0.0);
    for (double t = yd + 4.0 * (0.0 - yd); t < h; t = yd + 4.0 * (t - yd)) br.push_back(t);
    br.push_back(h);
  } else {
    br.push_back(h);
    for (double t = yd - 4.0 * (yd - h); t > 0.0; t = yd - 4.0 * (yd - t)) br.push_back(t);
    br.push_back(0.0);
    std::reverse(br.begin(), br.end());
  }
  return br;
}

cplx nonsingular_piece(const PieceContext& c, double h, int nu) {
  // sign = +1 with y < a: exp(i omega s) H0(omega (s - y)) = h0 exp(-i omega y) exp(2 i omega s);
  // sign = -1 with y > b: exp(-i omega s) H0(omega (y - s)) = h0 exp(i omega y) exp(-2 i omega s).
  const RealToComplex f = [&c](double d) {
    return piece_poly(c, d) * h0_scaled(cplx(c.omega * std::abs(d - c.yd), 0.0));
  };
  const std::vector<double> br = graded_panels(h, c.yd);
  cplx acc = 0.0;
  for (std::size_t k = 0; k + 1 < br.size(); ++k)
    acc += fcc_exp(f, nu, 2.0 * c.sign * c.omega, br[k], br[k + 1]);
  return std::exp(I * (c.sign * c.omega * (2.0 * c.a - c.y))) * acc;
}

cplx go_rhs(double y, const IncidentWave& w) {
  const double kappa = std::cos(w.theta);
  const cplx amp = -2.0 * I * w.omega * std::sin(w.theta);  // V0 = amp exp(i omega kappa s)
  cplx integral = 0.0;
  if (1.0 - y > 0.0) integral += half_line_sigma0(w.omega, kappa, 1.0 - y);
  if (y + 1.0 > 0.0) integral += half_line_sigma0(w.omega, -kappa, y + 1.0);
  integral *= std::exp(I * (w.omega * kappa * y));
  const cplx incident = std::exp(I * (w.omega * kappa * y));
  return incident - 0.25 * I * amp * integral;
}

}  // namespace

GradedMesh build_mesh(int p, int Ng, double sigma) {
  if (p < 1) throw std::invalid_argument("build_mesh: p must be >= 1");
  if (Ng < 1) throw std::invalid_argument("build_mesh: Ng must be >= 1");
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("build_mesh: sigma must lie in (0, 1)");
  GradedMesh m;
  m.sigma = sigma;
  m.Ng = Ng;
  m.p = p;
  std::vector<double> t1(Ng + 1);
  for (int n = 1; n <= Ng + 1; ++n) t1[n - 1] = -1.0 + 2.0 * std::pow(sigma, Ng + 1 - n);
  m.points_plus.push_back(-1.0);
  for (int n = 1; n <= Ng; ++n) {
    const int Jn = p - static_cast<int>(std::floor(static_cast<double>((Ng + 2 - n) * p) / (Ng + 1))) + 1;
    m.J.push_back(Jn);
    for (int j = 0; j < Jn; ++j)
      m.points_plus.push_back(t1[n - 1] + (t1[n] - t1[n - 1]) * j / static_cast<double>(Jn));
  }
  m.points_plus.push_back(1.0);
  for (auto it = m.points_plus.rbegin(); it != m.points_plus.rend(); ++it)
    m.points_minus.push_back(-*it);
  return m;
}

SplineBasis::SplineBasis(std::vector<double> breaks) : breaks_(std::move(breaks)) {
  if (breaks_.size() < 2) throw std::invalid_argument("SplineBasis: need at least one cell");
  for (std::size_t k = 1; k < breaks_.size(); ++k)
    if (!(breaks_[k] > breaks_[k - 1]))
      throw std::invalid_argument("SplineBasis: breakpoints must increase strictly");
  knots_.assign(3, breaks_.front());
  knots_.insert(knots_.end(), breaks_.begin(), breaks_.end());
  knots_.insert(knots_.end(), 3, breaks_.back());
}

std::pair<int, int> SplineBasis::support_cells(int i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("SplineBasis: index out of range");
  return {std::max(0, i - 3), std::min(cells() - 1, i)};
}

double SplineBasis::eval_on_cell(int i, int cell, double s) const {
  return eval_offset(i, cell, s - breaks_[cell]);
}

double SplineBasis::eval_offset(int i, int cell, double d) const {
  const int span = cell + 3;  // knots_[span] = breaks_[cell]
  const double a = knots_[span];
  const int r0 = i - (span - 3);
  if (r0 < 0 || r0 > 3) return 0.0;
  // Cox-de Boor triangle for the four cubics alive on this span.
  double N[4] = {1.0, 0.0, 0.0, 0.0}, left[4], right[4];
  for (int j = 1; j <= 3; ++j) {
    left[j] = d + (a - knots_[span + 1 - j]);
    right[j] = (knots_[span + j] - a) - d;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double tmp = N[r] / (right[r + 1] + left[j - r]);
      N[r] = saved + right[r + 1] * tmp;
      saved = left[j - r] * tmp;
    }
    N[j] = saved;
  }
  return N[r0];
}

int SplineBasis::cell_of(double s) const {
  if (s <= breaks_.front()) return 0;
  if (s >= breaks_.back()) return cells() - 1;
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
  return static_cast<int>(it - breaks_.begin()) - 1;
}

double SplineBasis::eval(int i, double s) const {
  if (s < breaks_.front() || s > breaks_.back()) return 0.0;
  return eval_on_cell(i, cell_of(s), s);
}

std::string tag_name(EntryTag t) {
  switch (t) {
    case EntryTag::nonosc: return "nonosc";
    case EntryTag::singular_osc: return "singular_osc";
    case EntryTag::nonsingular_osc: return "nonsingular_osc";
  }
  return "?";
}

EntryTag classify_entry(double a, double b, double y, int sign, double omega, double omega0,
                        double eps) {
  if (omega * (b - a) <= omega0) return EntryTag::nonosc;
  if (sign > 0 && y >= b + eps) return EntryTag::nonosc;
  if (sign < 0 && y <= a - eps) return EntryTag::nonosc;
  if (y > a - eps && y < b + eps) return EntryTag::singular_osc;
  return EntryTag::nonsingular_osc;
}

std::vector<double> collocation_points(const GradedMesh& mesh, long M) {
  const std::vector<double> u = union_breaks(mesh);
  const long gaps = static_cast<long>(u.size()) - 1;
  if (M < static_cast<long>(u.size()))
    throw std::invalid_argument("collocation_points: M smaller than the mesh union");
  const long extra = M - static_cast<long>(u.size());
  std::vector<long> add(gaps, extra / gaps);
  std::vector<long> order(gaps);
  std::iota(order.begin(), order.end(), 0L);
  std::stable_sort(order.begin(), order.end(),
                   [&u](long i, long j) { return u[i + 1] - u[i] > u[j + 1] - u[j]; });
  for (long k = 0; k < extra % gaps; ++k) add[order[k]] += 1;
  std::vector<double> pts;
  for (long g = 0; g < gaps; ++g) {
    pts.push_back(u[g]);
    for (long k = 1; k <= add[g]; ++k)
      pts.push_back(u[g] + (u[g + 1] - u[g]) * k / static_cast<double>(add[g] + 1));
  }
  pts.push_back(u.back());
  return pts;
}

CollocationSystem assemble(const GradedMesh& mesh, const IncidentWave& wave,
                           const AssemblyOptions& opt, AssemblyStats* stats) {
  if (!(wave.omega > 0.0)) throw std::invalid_argument("assemble: omega must be positive");
  const SplineBasis plus(mesh.points_plus), minus(mesh.points_minus);
  CollocationSystem sys;
  for (int i = 0; i < plus.size(); ++i) sys.dofs.push_back({1, i});
  for (int i = 0; i < minus.size(); ++i) sys.dofs.push_back({-1, i});
  const long N = static_cast<long>(sys.dofs.size());
  const long M = sys.oversampling * N;
  sys.points = collocation_points(mesh, M);
  sys.matrix.resize(M, N);
  sys.rhs.resize(M);
  for (long l = 0; l < M; ++l) sys.rhs(l) = go_rhs(sys.points[l], wave);

  const int nthreads = std::max(1, opt.threads);
  std::vector<AssemblyStats> local(nthreads);
  std::vector<std::string> errors(nthreads);
  const auto work = [&](int tid) {
    MomentCache cache;
    AssemblyStats& st = local[tid];
    for (long col = tid; col < N; col += nthreads) {
      const Dof& d = sys.dofs[col];
      const SplineBasis& basis = d.sign > 0 ? plus : minus;
      const auto [c0, c1] = basis.support_cells(d.index);
      for (long l = 0; l < M; ++l) {
        cplx entry = 0.0;
        for (int cell = c0; cell <= c1; ++cell) {
          const double a = basis.breaks()[cell], b = basis.breaks()[cell + 1];
          const double y = sys.points[l];
          const PieceContext ctx{&basis, d.index, cell, d.sign, wave.omega, y, a, y - a};
          const EntryTag tag = classify_entry(a, b, y, d.sign, wave.omega, opt.omega0, opt.eps);
          try {
            switch (tag) {
              case EntryTag::nonosc:
                entry += nonosc_piece(ctx, b - a, opt.adaptive_tol);
                ++st.nonosc;
                break;
              case EntryTag::singular_osc:
                entry += singular_piece(ctx, b - a, cache);
                ++st.singular_osc;
                break;
              case EntryTag::nonsingular_osc:
                entry += nonsingular_piece(ctx, b - a, opt.nu_fcc);
                ++st.nonsingular_osc;
                break;
            }
          } catch (const std::exception& e) {
            std::ostringstream os;
            os << "assemble: entry (" << l << ", " << col << ") " << tag_name(tag) << ": " << e.what();
            errors[tid] = os.str();
            return;
          }
        }
        sys.matrix(l, col) = 0.25 * I * entry;
      }
    }
  };
  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
  if (stats) {
    *stats = {};
    for (const auto& st : local) {
      stats->nonosc += st.nonosc;
      stats->singular_osc += st.singular_osc;
      stats->nonsingular_osc += st.nonsingular_osc;
    }
  }
  return sys;
}

namespace {

// Adaptive integral over the support of one basis of g(V(s), H0, s), with the
// panels refined dyadically towards y.
cplx support_integral(const GradedMesh& mesh, const IncidentWave& wave, double y, const Dof& dof,
                      const ToleranceSpec& tol,
                      const std::function<cplx(double, cplx, double)>& g) {
  const SplineBasis basis(dof.sign > 0 ? mesh.points_plus : mesh.points_minus);
  const auto [c0, c1] = basis.support_cells(dof.index);
  const double w = wave.omega;
  const double h = std::min(0.125, 2.0 * pi / (20.0 * w));
  cplx acc = 0.0;
  for (int cell = c0; cell <= c1; ++cell) {
    const double a = basis.breaks()[cell], b = basis.breaks()[cell + 1];
    const double yd = y - a, len = b - a;
    const ComplexFn f = [&](double d) {
      if (d == yd) return cplx(0.0);
      return g(basis.eval_offset(dof.index, cell, d), hankel1_0(cplx(w * std::abs(d - yd), 0.0)),
               a + d);
    };
    std::vector<double> br = uniform_breaks(0.0, len, h);
    if (yd > 0.0 && yd < len) br.push_back(yd);
    const double ys = std::clamp(yd, 0.0, len);
    for (double d = std::min(h, len) / 2.0; d > 1e-14 * len; d /= 2.0) {
      if (ys - d > 0.0) br.push_back(ys - d);
      if (ys + d < len) br.push_back(ys + d);
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    acc += integrate_adaptive(f, br, tol).value;
  }
  return acc;
}

}  // namespace

cplx entry_oracle(const GradedMesh& mesh, const IncidentWave& wave, double y, const Dof& dof,
                  const ToleranceSpec& tol) {
  const double w = wave.omega;
  const int sign = dof.sign;
  return 0.25 * I *
         support_integral(mesh, wave, y, dof, tol, [w, sign](double v, cplx h, double s) {
           return v * h * std::exp(I * (sign * w * s));
         });
}

double entry_scale(const GradedMesh& mesh, const IncidentWave& wave, double y, const Dof& dof) {
  return 0.25 * support_integral(mesh, wave, y, dof, {1e-15, 1e-6, 400000},
                                 [](double v, cplx h, double) { return cplx(std::abs(v * h), 0.0); })
                    .real();
}

Solution solve_system(const CollocationSystem& sys) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(sys.matrix);
  Solution out;
  out.coeffs = qr.solve(sys.rhs);
  out.rank = qr.rank();
  out.rank_deficient = out.rank < sys.matrix.cols();
  const double bn = sys.rhs.norm();
  out.residual = bn > 0.0 ? (sys.matrix * out.coeffs - sys.rhs).norm() / bn : 0.0;
  const auto R = qr.matrixR();
  const long k = std::min(R.rows(), R.cols());
  if (k > 0 && std::abs(R(k - 1, k - 1)) > 0.0)
    out.cond_estimate = std::abs(R(0, 0)) / std::abs(R(k - 1, k - 1));
  else
    out.cond_estimate = INFINITY;
  return out;
}

Density::Density(const GradedMesh& mesh, const std::vector<Dof>& dofs, Eigen::VectorXcd coeffs,
                 double omega)
    : plus_(mesh.points_plus),
      minus_(mesh.points_minus),
      dofs_(dofs),
      coeffs_(std::move(coeffs)),
      omega_(omega),
      breaks_(union_breaks(mesh)) {
  if (static_cast<long>(dofs_.size()) != coeffs_.size())
    throw std::invalid_argument("Density: coefficient count does not match the dofs");
}

cplx Density::operator()(double s) const {
  const int cp = plus_.cell_of(s), cm = minus_.cell_of(s);
  cplx up = 0.0, um = 0.0;
  for (std::size_t k = 0; k < dofs_.size(); ++k) {
    const Dof& d = dofs_[k];
    if (d.sign > 0) {
      if (d.index >= cp && d.index <= cp + 3) up += coeffs_(k) * plus_.eval_on_cell(d.index, cp, s);
    } else {
      if (d.index >= cm && d.index <= cm + 3) um += coeffs_(k) * minus_.eval_on_cell(d.index, cm, s);
    }
  }
  return up * std::exp(I * (omega_ * s)) + um * std::exp(-I * (omega_ * s));
}

double rel_l1_error(const std::function<cplx(double)>& u, const std::function<cplx(double)>& ref,
                    const std::vector<double>& breaks, double omega) {
  const double h = std::min(0.05, 2.0 * pi / (8.0 * std::max(omega, 1.0)));
  std::vector<double> br;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const auto sub = uniform_breaks(breaks[k], breaks[k + 1], h);
    br.insert(br.end(), sub.begin(), sub.end() - 1);
  }
  br.push_back(breaks.back());
  ToleranceSpec tol{1e-14, 1e-7, 400000};
  const double num =
      integrate_adaptive([&](double s) { return cplx(std::abs(u(s) - ref(s)), 0.0); }, br, tol)
          .value.real();
  const double den =
      integrate_adaptive([&](double s) { return cplx(std::abs(ref(s)), 0.0); }, br, tol).value.real();
  if (!(den > 0.0)) throw std::invalid_argument("rel_l1_error: reference has zero norm");
  return num / den;
}

Density ScatterRun::density() const {
  return Density(mesh, system.dofs, solution.coeffs, omega);
}

ScatterRun run_scatter(int p, int Ng, double sigma, const IncidentWave& wave, int repeats,
                       const AssemblyOptions& opt) {
  ScatterRun run;
  run.mesh = build_mesh(p, Ng, sigma);
  run.omega = wave.omega;
  run.assembly_seconds = INFINITY;
  for (int r = 0; r < std::max(1, repeats); ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    run.system = assemble(run.mesh, wave, opt, &run.stats);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    run.assembly_seconds = std::min(run.assembly_seconds, dt);
  }
  run.solution = solve_system(run.system);
  return run;
}

}  // namespace hfilon
