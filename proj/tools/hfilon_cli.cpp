#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hfilon/amplitudes.hpp"
#include "hfilon/csv.hpp"
#include "hfilon/filonq.hpp"
#include "hfilon/moments1.hpp"
#include "hfilon/moments2.hpp"
#include "hfilon/oracle.hpp"
#include "hfilon/scatter2d.hpp"

using namespace hfilon;

namespace {

struct Config {
  double omega = 100.0;
  std::string omega_range;
  double beta = 0.0;
  double alpha = 0.5;
  std::vector<int> s{0};
  int nu = 8;
  long N = 32;
  std::vector<int> p{3, 4, 5};
  int Ng = 0;  // 0 means 2p
  double sigma_grading = 0.3;
  double eps = 1e-4;
  double omega0 = 2.0;
  int gh_nodes = default_gh_nodes;
  int gl_nodes = default_gl_nodes;
  std::string out = "-";
  std::string amp = "demo1";
};

const ToleranceSpec oracle_tol{1e-16, 1e-12, 400000};
// Moment tables reach |sigma_n| ~ 1e-4 at n ~ 1000, where 1e-12 sits below the rounding floor.
const ToleranceSpec table_tol{1e-15, 1e-10, 400000};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  return os.str();
}

std::vector<double> omega_grid(const Config& c) {
  if (c.omega_range.empty()) return {c.omega};
  double lo = 0.0, hi = 0.0;
  long count = 0;
  char extra = 0;
  if (std::sscanf(c.omega_range.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &count, &extra) != 3)
    throw std::invalid_argument("--omega-range: expected lo:hi:count");
  if (!(lo > 0.0 && hi >= lo) || count < 1)
    throw std::invalid_argument("--omega-range: requires 0 < lo <= hi and count >= 1");
  std::vector<double> w;
  for (long k = 0; k < count; ++k)
    w.push_back(count == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1)));
  return w;
}

// Runs job(i) for i in [0, n) on a few threads; results land in caller slots.
template <class Job>
void parallel_for(long n, Job job) {
  const long nt = std::max(1L, std::min<long>(n, std::thread::hardware_concurrency()));
  std::vector<std::string> errors(nt);
  std::vector<std::thread> pool;
  for (long t = 0; t < nt; ++t)
    pool.emplace_back([&, t] {
      try {
        for (long i = t; i < n; i += nt) job(i);
      } catch (const std::exception& e) {
        errors[t] = e.what();
      }
    });
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

void eval_cmd(std::ostream& os, const Config& c, int kind) {
  const AmplitudeSpec amp = named_amplitude(c.amp);
  const int s = c.s.front();
  QuadInfo info;
  cplx q, ref;
  if (kind == 1) {
    q = q1(amp, s, c.nu, {c.omega, c.beta}, &info);
    ref = reference_I1(amp.f, c.omega, c.beta, oracle_tol).value;
  } else {
    q = q2(amp, s, c.nu, {c.omega, c.alpha, c.beta}, &info);
    ref = reference_I2(amp.f, c.omega, c.alpha, c.beta, oracle_tol).value;
  }
  os << "re,im,oracle_re,oracle_im,abs_err,s_used,moments\n";
  os << num(q.real()) << ',' << num(q.imag()) << ',' << num(ref.real()) << ',' << num(ref.imag())
     << ',' << num(std::abs(q - ref)) << ',' << info.s_used << ',' << info.moments << '\n';
}

void moments_cmd(std::ostream& os, const Config& c, const std::string& config, int kind) {
  if (kind == 1) {
    Sigma1Options opt;
    opt.gh_nodes = c.gh_nodes;
    write_moment_csv(os, compute_sigma1({c.omega, c.beta}, c.N, opt), config);
  } else {
    Sigma2Options opt;
    opt.gh_nodes = c.gh_nodes;
    opt.gl_nodes = c.gl_nodes;
    write_moment_csv(os, compute_sigma2({c.omega, c.alpha, c.beta}, c.N, opt), config);
  }
}

void converge_cmd(std::ostream& os, const Config& c, int kind) {
  const AmplitudeSpec amp = named_amplitude(c.amp);
  const std::vector<double> ws = omega_grid(c);
  const long nw = static_cast<long>(ws.size());
  std::vector<cplx> refs(nw);
  std::vector<std::vector<double>> err(c.s.size(), std::vector<double>(nw));
  parallel_for(nw, [&](long i) {
    const double w = ws[i];
    refs[i] = kind == 1 ? reference_I1(amp.f, w, c.beta, oracle_tol).value
                        : reference_I2(amp.f, w, c.alpha, c.beta, oracle_tol).value;
    for (std::size_t k = 0; k < c.s.size(); ++k) {
      const cplx q = kind == 1 ? q1(amp, c.s[k], c.nu, {w, c.beta})
                               : q2(amp, c.s[k], c.nu, {w, c.alpha, c.beta});
      err[k][i] = std::abs(q - refs[i]);
    }
  });
  os << "s,omega,abs_err\n";
  for (std::size_t k = 0; k < c.s.size(); ++k)
    for (long i = 0; i < nw; ++i) os << c.s[k] << ',' << num(ws[i]) << ',' << num(err[k][i]) << '\n';
  for (std::size_t k = 0; k < c.s.size(); ++k)
    os << "# slope s=" << c.s[k] << " fitted=" << num(loglog_slope(ws, err[k]))
       << " expected=" << -(c.s[k] + 2) << '\n';
}

// Forward and boundary-value tables against the oracle, sigma1 unless
// --alpha was given.
void stability_cmd(std::ostream& os, const Config& c, bool use_sigma2) {
  std::vector<cplx> fwd, bvp, ref(c.N + 1);
  if (!use_sigma2) {
    const Params1 p{c.omega, c.beta};
    Sigma1Options opt;
    opt.gh_nodes = c.gh_nodes;
    opt.path = MomentPath::bvp_only;
    bvp = compute_sigma1(p, c.N, opt).values;
    opt.path = MomentPath::forward_only;
    opt.truncate_on_overflow = true;
    fwd = compute_sigma1(p, c.N, opt).values;
    parallel_for(c.N + 1, [&](long n) {
      const ComplexFn t = [n](double x) { return cplx(cheb_t_real(static_cast<int>(n), 2.0 * x - 1.0)); };
      ref[n] = reference_I1(t, c.omega, c.beta, table_tol, 4.0 * n).value;
    });
  } else {
    const Params2 p{c.omega, c.alpha, c.beta};
    Sigma2Options opt;
    opt.gh_nodes = c.gh_nodes;
    opt.gl_nodes = c.gl_nodes;
    opt.path = MomentPath::bvp_only;
    bvp = compute_sigma2(p, c.N, opt).values;
    opt.path = MomentPath::forward_only;
    opt.truncate_on_overflow = true;
    fwd = compute_sigma2(p, c.N, opt).values;
    parallel_for(c.N + 1, [&](long n) {
      const ComplexFn t = [n](double x) { return cplx(cheb_t_real(static_cast<int>(n), x)); };
      ref[n] = reference_I2(t, c.omega, c.alpha, c.beta, table_tol, 2.0 * n).value;
    });
  }
  const auto rel = [&](const std::vector<cplx>& v, long n) {
    if (n >= static_cast<long>(v.size())) return std::numeric_limits<double>::infinity();
    return std::abs(v[n] - ref[n]) / std::abs(ref[n]);
  };
  os << "n,forward_rel_err,bvp_rel_err\n";
  for (long n = 0; n <= c.N; ++n) os << n << ',' << num(rel(fwd, n)) << ',' << num(rel(bvp, n)) << '\n';
}

void scatter_cmd(std::ostream& os, const Config& c) {
  AssemblyOptions opt;
  opt.eps = c.eps;
  opt.omega0 = c.omega0;
  std::vector<ScatterRow> rows;
  const int pref = *std::max_element(c.p.begin(), c.p.end()) + 1;
  for (double w : omega_grid(c)) {
    const IncidentWave wave{IncidentWave{}.theta, w};
    const ScatterRun ref = run_scatter(pref, c.Ng > 0 ? c.Ng : 2 * pref, c.sigma_grading, wave, 1, opt);
    const Density dref = ref.density();
    for (int p : c.p) {
      const int Ng = c.Ng > 0 ? c.Ng : 2 * p;
      const ScatterRun run = run_scatter(p, Ng, c.sigma_grading, wave, 3, opt);
      const Density d = run.density();
      std::vector<double> br = d.breaks();
      br.insert(br.end(), dref.breaks().begin(), dref.breaks().end());
      std::sort(br.begin(), br.end());
      br.erase(std::unique(br.begin(), br.end()), br.end());
      rows.push_back({w, p, Ng, static_cast<long>(run.system.dofs.size()), run.assembly_seconds,
                      run.solution.residual, rel_l1_error(d, dref, br, w)});
    }
  }
  write_scatter_csv(os, rows);
  os << "# reference p=" << pref << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filon-Clenshaw-Curtis quadrature for Hankel-kernel integrals"};
  app.require_subcommand(1);
  Config c;

  const auto add_common = [&c](CLI::App* sub) {
    sub->add_option("--out", c.out, "output CSV path, - for stdout");
    sub->add_option("--gh-nodes", c.gh_nodes, "Gauss-Hermite nodes for initial moments")
        ->check(CLI::PositiveNumber);
    sub->add_option("--gl-nodes", c.gl_nodes, "Gauss-Laguerre nodes for initial moments")
        ->check(CLI::PositiveNumber);
  };
  const auto add_freq = [&c](CLI::App* sub) {
    sub->add_option("--omega", c.omega, "frequency")->check(CLI::PositiveNumber);
    sub->add_option("--beta", c.beta, "beta");
  };
  const auto add_rule = [&c](CLI::App* sub) {
    sub->add_option("--s", c.s, "derivative orders")->delimiter(',');
    sub->add_option("--nu", c.nu, "interior Clenshaw-Curtis points")->check(CLI::PositiveNumber);
    sub->add_option("--amp", c.amp, "amplitude: demo1, one, cheb:<n>, c2spline");
  };

  auto* eval1 = app.add_subcommand("eval1", "single Q1 evaluation against the oracle");
  auto* eval2 = app.add_subcommand("eval2", "single Q2 evaluation against the oracle");
  auto* mom1 = app.add_subcommand("moments1", "sigma1 moment table");
  auto* mom2 = app.add_subcommand("moments2", "sigma2 moment table");
  auto* conv1 = app.add_subcommand("converge1", "Q1 error over a frequency sweep");
  auto* conv2 = app.add_subcommand("converge2", "Q2 error over a frequency sweep");
  auto* stab = app.add_subcommand("stability", "forward against boundary-value moments");
  auto* scat = app.add_subcommand("scatter", "screen scattering timing and L1 report");
  CLI::Option* alpha_opt = nullptr;
  for (auto* sub : {eval1, eval2, mom1, mom2, conv1, conv2, stab, scat}) add_common(sub);
  for (auto* sub : {eval1, eval2, mom1, mom2, conv1, conv2, stab}) add_freq(sub);
  for (auto* sub : {eval1, eval2, conv1, conv2}) add_rule(sub);
  for (auto* sub : {eval2, mom2, conv2})
    sub->add_option("--alpha", c.alpha, "alpha")->check(CLI::PositiveNumber);
  alpha_opt = stab->add_option("--alpha", c.alpha, "alpha; selects sigma2")->check(CLI::PositiveNumber);
  for (auto* sub : {mom1, mom2, stab})
    sub->add_option("--N", c.N, "largest moment index")->check(CLI::NonNegativeNumber);
  for (auto* sub : {conv1, conv2, scat})
    sub->add_option("--omega-range", c.omega_range, "lo:hi:count, log-spaced");
  scat->add_option("--omega", c.omega, "frequency")->check(CLI::PositiveNumber);
  scat->add_option("--p", c.p, "polynomial grading levels")->delimiter(',');
  scat->add_option("--Ng", c.Ng, "graded layers, default 2p")->check(CLI::NonNegativeNumber);
  scat->add_option("--sigma-grading", c.sigma_grading, "grading ratio in (0, 1)");
  scat->add_option("--eps", c.eps, "classification distance")->check(CLI::PositiveNumber);
  scat->add_option("--omega0", c.omega0, "non-oscillatory threshold")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    std::ostringstream config;
    config << "command=" << app.get_subcommands().front()->get_name() << " omega=" << num(c.omega)
           << " omega-range=" << c.omega_range << " beta=" << num(c.beta) << " alpha=" << num(c.alpha)
           << " s=" << join(c.s) << " nu=" << c.nu << " N=" << c.N << " p=" << join(c.p)
           << " Ng=" << c.Ng << " sigma-grading=" << num(c.sigma_grading) << " eps=" << num(c.eps)
           << " omega0=" << num(c.omega0) << " gh-nodes=" << c.gh_nodes
           << " gl-nodes=" << c.gl_nodes << " amp=" << c.amp;
    std::ostringstream body;
    if (eval1->parsed() || eval2->parsed()) {
      body << "# " << config.str() << '\n';
      eval_cmd(body, c, eval1->parsed() ? 1 : 2);
    } else if (mom1->parsed() || mom2->parsed()) {
      moments_cmd(body, c, config.str(), mom1->parsed() ? 1 : 2);
    } else if (conv1->parsed() || conv2->parsed()) {
      body << "# " << config.str() << '\n';
      converge_cmd(body, c, conv1->parsed() ? 1 : 2);
    } else if (stab->parsed()) {
      body << "# " << config.str() << '\n';
      stability_cmd(body, c, alpha_opt->count() > 0);
    } else {
      body << "# " << config.str() << '\n';
      scatter_cmd(body, c);
    }
    if (c.out == "-") {
      std::cout << body.str();
    } else {
      std::ofstream f(c.out);
      if (!f) throw std::runtime_error("cannot open " + c.out);
      f << body.str();
      if (!f) throw std::runtime_error("write failed: " + c.out);
    }
  } catch (const std::exception& e) {
    std::cerr << "hfilon: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
