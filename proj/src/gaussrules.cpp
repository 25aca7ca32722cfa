#include "hfilon/gaussrules.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hfilon {

namespace {

// Jacobi matrix with diagonal a and off-diagonal b, total mass mu0. Nodes
// come from the eigenvalues; weights are recomputed from the orthonormal
// polynomials, w = mu0 / sum_j p_j(x)^2, which keeps tiny weights accurate
// in the relative sense (eigenvector components only carry absolute accuracy).
QuadRule golub_welsch(RuleKind kind, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                      double mu0) {
  const int m = static_cast<int>(a.size());
  QuadRule rule{kind, std::vector<double>(m), std::vector<double>(m)};
  if (m == 1) {
    rule.nodes[0] = a(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(a, b, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("golub_welsch: eigensolver failed");
  for (int k = 0; k < m; ++k) {
    long double x = es.eigenvalues()(k);
    long double sum = 0.0L;
    for (int pass = 0; pass < 3; ++pass) {
      // p_m(x) and p_m'(x) for a Newton polish; sum of squares of p_0..p_{m-1}.
      long double p0 = 0.0L, p1 = 1.0L, d0 = 0.0L, d1 = 0.0L, scale = 1.0L;
      sum = 1.0L;
      for (int j = 0; j < m; ++j) {
        const long double bj = j > 0 ? b(j - 1) : 0.0L;
        const long double bn = j + 1 < m ? b(j) : 1.0L;
        const long double p2 = ((x - a(j)) * p1 - bj * p0) / bn;
        const long double d2 = ((x - a(j)) * d1 + p1 - bj * d0) / bn;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
        if (j + 1 < m) sum += p1 * p1;
        if (std::fabs(p1) > 1e200L) {
          p0 *= 1e-200L;
          p1 *= 1e-200L;
          d0 *= 1e-200L;
          d1 *= 1e-200L;
          sum *= 1e-400L;
          scale *= 1e200L;
        }
      }
      if (pass < 2 && d1 != 0.0L) x -= p1 / d1;
      if (pass == 2 && scale != 1.0L) sum = INFINITY;
    }
    rule.nodes[k] = static_cast<double>(x);
    rule.weights[k] = static_cast<double>(mu0 / sum);
  }
  return rule;
}

void check_count(int m) {
  if (m < 1 || m > 200)
    throw std::invalid_argument("gauss rule: node count must lie in [1, 200], got " +
                                std::to_string(m));
}

}  // namespace

QuadRule hermite_rule(int m) {
  check_count(m);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd b(std::max(m - 1, 0));
  for (int k = 1; k < m; ++k) b(k - 1) = std::sqrt(0.5 * k);
  QuadRule rule = golub_welsch(RuleKind::hermite, a, b, std::sqrt(3.14159265358979323846));
  // Enforce exact symmetry of the computed rule.
  for (int k = 0; k < m / 2; ++k) {
    const int r = m - 1 - k;
    const double x = 0.5 * (rule.nodes[r] - rule.nodes[k]);
    const double w = 0.5 * (rule.weights[r] + rule.weights[k]);
    rule.nodes[k] = -x;
    rule.nodes[r] = x;
    rule.weights[k] = rule.weights[r] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

QuadRule laguerre_rule(int m) {
  check_count(m);
  Eigen::VectorXd a(m);
  Eigen::VectorXd b(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) a(k) = 2.0 * k + 1.0;
  for (int k = 1; k < m; ++k) b(k - 1) = k;
  return golub_welsch(RuleKind::laguerre, a, b, 1.0);
}

}  // namespace hfilon
