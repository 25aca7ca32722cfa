#include "hfilon/chebkit.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace hfilon {

namespace {

constexpr double pi_d = 3.14159265358979323846;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// Unnormalised DCT-I (FFTW REDFT00) applied to real and imaginary parts:
// Y_n = u_0 + (-1)^n u_{N-1} + 2 sum_{k=1}^{N-2} u_k cos(pi n k/(N-1)).
std::vector<cplx> redft00(const std::vector<cplx>& u) {
  const int n = static_cast<int>(u.size());
  std::vector<double> buf(2 * n);
  for (int k = 0; k < n; ++k) {
    buf[2 * k] = u[k].real();
    buf[2 * k + 1] = u[k].imag();
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_r2r_kind kind = FFTW_REDFT00;
    plan = fftw_plan_many_r2r(1, &n, 2, buf.data(), nullptr, 2, 1, buf.data(), nullptr, 2, 1,
                              &kind, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  std::vector<cplx> out(n);
  for (int k = 0; k < n; ++k) out[k] = cplx(buf[2 * k], buf[2 * k + 1]);
  return out;
}

// Exact derivative values for n + j <= exact_limit, stored as doubles.
constexpr int exact_limit = 60;

struct DerivTables {
  // at_one[n][j] = T_n^{(j)}(1), at_zero[n][j] = T_n^{(j)}(0)
  std::vector<std::vector<double>> at_one, at_zero;
};

const DerivTables& deriv_tables() {
  static const DerivTables tables = [] {
    using boost::multiprecision::cpp_int;
    DerivTables t;
    const int L = exact_limit;
    t.at_one.assign(L + 1, std::vector<double>(L + 1, 0.0));
    t.at_zero.assign(L + 1, std::vector<double>(L + 1, 0.0));
    for (int n = 0; n <= L; ++n) {
      cpp_int v = 1;
      t.at_one[n][0] = 1.0;
      for (int j = 1; j <= L - n && j <= n; ++j) {
        v *= cpp_int(n) * n - cpp_int(j - 1) * (j - 1);
        v /= 2 * (j - 1) + 1;
        t.at_one[n][j] = v.convert_to<double>();
      }
    }
    // T_{n+1}^{(j)}(0) = 2j T_n^{(j-1)}(0) - T_{n-1}^{(j)}(0)
    std::vector<std::vector<cpp_int>> z(L + 1, std::vector<cpp_int>(L + 1, 0));
    z[0][0] = 1;
    if (L >= 1) z[1][1] = 1;
    for (int n = 1; n < L; ++n)
      for (int j = 0; j <= L; ++j) {
        cpp_int v = -z[n - 1][j];
        if (j > 0) v += 2 * j * z[n][j - 1];
        z[n + 1][j] = v;
      }
    for (int n = 0; n <= L; ++n)
      for (int j = 0; j + n <= L; ++j) t.at_zero[n][j] = z[n][j].convert_to<double>();
    return t;
  }();
  return tables;
}

long double deriv_at_one_float(int n, int j) {
  long double v = 1.0L;
  for (int k = 0; k < j; ++k)
    v *= (static_cast<long double>(n) * n - static_cast<long double>(k) * k) / (2 * k + 1);
  return v;
}

long double deriv_at_zero_float(int n, int j) {
  // prev[jj] = T_{m-1}^{(jj)}(0), cur[jj] = T_m^{(jj)}(0)
  std::vector<long double> prev(j + 1, 0.0L), cur(j + 1, 0.0L);
  prev[0] = 1.0L;
  if (n == 0) return j == 0 ? 1.0L : 0.0L;
  if (j >= 1) cur[1] = 1.0L;
  for (int m = 1; m < n; ++m) {
    std::vector<long double> next(j + 1);
    for (int jj = 0; jj <= j; ++jj) next[jj] = -prev[jj] + (jj > 0 ? 2.0L * jj * cur[jj - 1] : 0.0L);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur[j];
}

void check_nu(int nu, std::size_t samples) {
  if (nu < 1) throw std::invalid_argument("interpolation: nu must be >= 1");
  if (samples != static_cast<std::size_t>(nu + 2))
    throw std::invalid_argument("interpolation: expected nu+2 samples, got " +
                                std::to_string(samples));
}

bool has_derivs(const std::vector<cplx>& v, int s) { return static_cast<int>(v.size()) >= s + 1; }

// Shared machinery: given the halved DCT coefficients b (length nu+2) and a
// set of derivative conditions sum_n p_n T_n^{(j)}(x_r) = rhs_r, solve for the
// K = rows unknowns p_{nu+1+k}, k = 1..K, with p_{nu+1-k} = b_{nu+1-k} - p_{nu+1+k}.
struct Condition {
  int point;  // -1, 0, 1 in the standard variable t
  int order;  // j
  cplx value; // required value of p^{(j)} at the point, in the t variable
};

std::vector<cplx> fold_and_solve(std::vector<cplx> b, int nu, const std::vector<Condition>& conds) {
  const int K = static_cast<int>(conds.size());
  std::vector<cplx> p(nu + 2 + K, cplx(0.0));
  for (int n = 0; n <= nu + 1; ++n) p[n] = b[n];
  if (K == 0) return p;
  Eigen::MatrixXcd A(K, K);
  Eigen::VectorXcd rhs(K);
  for (int r = 0; r < K; ++r) {
    const auto& c = conds[r];
    cplx base = 0.0;
    for (int n = 0; n <= nu + 1; ++n) base += b[n] * cheb_deriv_value(n, c.order, c.point);
    rhs(r) = c.value - base;
    for (int k = 1; k <= K; ++k)
      A(r, k - 1) = cheb_deriv_value(nu + 1 + k, c.order, c.point) -
                    cheb_deriv_value(nu + 1 - k, c.order, c.point);
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const double rc = lu.rcond();
  if (!(rc > 1e-15))
    throw std::runtime_error("interpolation: auxiliary system is singular (rcond=" +
                             std::to_string(rc) + ")");
  const Eigen::VectorXcd q = lu.solve(rhs);
  for (int k = 1; k <= K; ++k) {
    p[nu + 1 + k] = q(k - 1);
    p[nu + 1 - k] -= q(k - 1);
  }
  return p;
}

std::vector<cplx> halved_coefficients(const std::vector<cplx>& samples) {
  std::vector<cplx> b = idct1(samples);
  b.front() *= 0.5;
  b.back() *= 0.5;
  return b;
}

}  // namespace

std::vector<double> cc_points(int nu) {
  if (nu < 1) throw std::invalid_argument("cc_points: nu must be >= 1");
  std::vector<double> c(nu + 2);
  for (int n = 0; n <= nu + 1; ++n) {
    // Evaluate through the symmetric sine form so that c_n = -c_{nu+1-n} exactly.
    c[n] = std::sin(pi_d * (nu + 1 - 2 * n) / (2.0 * (nu + 1)));
  }
  return c;
}

std::vector<cplx> idct1(const std::vector<cplx>& u) {
  if (u.size() < 2) throw std::invalid_argument("idct1: need at least two values");
  std::vector<cplx> y = redft00(u);
  const double scale = 1.0 / static_cast<double>(u.size() - 1);
  for (auto& v : y) v *= scale;
  return y;
}

std::vector<cplx> dct1(const std::vector<cplx>& p) {
  if (p.size() < 2) throw std::invalid_argument("dct1: need at least two values");
  std::vector<cplx> y = redft00(p);
  for (auto& v : y) v *= 0.5;
  return y;
}

double cheb_deriv_value(int n, int j, int point) {
  if (n < 0 || j < 0) throw std::invalid_argument("cheb_deriv_value: negative index");
  if (point != -1 && point != 0 && point != 1)
    throw std::invalid_argument("cheb_deriv_value: point must be -1, 0 or 1");
  if (j > n) return 0.0;
  if (point == 0) {
    if (n + j <= exact_limit) return deriv_tables().at_zero[n][j];
    return static_cast<double>(deriv_at_zero_float(n, j));
  }
  const double v = n + j <= exact_limit ? deriv_tables().at_one[n][j]
                                        : static_cast<double>(deriv_at_one_float(n, j));
  return (point == -1 && (n - j) % 2 != 0) ? -v : v;
}

ChebCoeffs interp_p1(const HermiteData& data, int s, int nu) {
  check_nu(nu, data.samples.size());
  if (s < 0 || s > max_hermite_order) throw std::invalid_argument("interp_p1: s out of range");
  if (!has_derivs(data.left, s) || !has_derivs(data.right, s)) s = 0;
  if (nu < 2 * s) throw std::invalid_argument("interp_p1: requires nu >= 2s");
  std::vector<Condition> conds;
  for (int j = 1; j <= s; ++j) {
    const double scale = std::ldexp(1.0, -j);  // d/dx = 2 d/dt
    conds.push_back({-1, j, data.left[j] * scale});
    conds.push_back({1, j, data.right[j] * scale});
  }
  return {fold_and_solve(halved_coefficients(data.samples), nu, conds), ChebDomain::shifted};
}

ChebCoeffs interp_p2(const HermiteData& data, int s, int nu) {
  check_nu(nu, data.samples.size());
  if (nu % 2 == 0) throw std::invalid_argument("interp_p2: nu must be odd");
  if (s < 0 || s > max_hermite_order) throw std::invalid_argument("interp_p2: s out of range");
  if (!has_derivs(data.left, s) || !has_derivs(data.right, s) || !has_derivs(data.mid, s)) s = 0;
  if (nu < 3 * s) throw std::invalid_argument("interp_p2: requires nu >= 3s");
  std::vector<Condition> conds;
  for (int j = 1; j <= s; ++j) {
    conds.push_back({-1, j, data.left[j]});
    conds.push_back({0, j, data.mid[j]});
    conds.push_back({1, j, data.right[j]});
  }
  return {fold_and_solve(halved_coefficients(data.samples), nu, conds), ChebDomain::standard};
}

cplx eval_cheb(const ChebCoeffs& c, cplx x) {
  const cplx t = c.domain == ChebDomain::shifted ? 2.0 * x - 1.0 : x;
  cplx b1 = 0.0, b2 = 0.0;
  for (int n = static_cast<int>(c.coeffs.size()) - 1; n >= 1; --n) {
    const cplx b0 = c.coeffs[n] + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  if (c.coeffs.empty()) return 0.0;
  return c.coeffs[0] + t * b1 - b2;
}

cplx eval_cheb(const ChebCoeffs& c, double x) { return eval_cheb(c, cplx(x, 0.0)); }

cplx cheb_t(int n, cplx x) {
  if (n == 0) return 1.0;
  cplx a = 1.0, b = x;
  for (int k = 1; k < n; ++k) {
    const cplx next = 2.0 * x * b - a;
    a = b;
    b = next;
  }
  return b;
}

}  // namespace hfilon
