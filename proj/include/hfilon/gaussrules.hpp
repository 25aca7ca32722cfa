#pragma once
// Gauss-Hermite and Gauss-Laguerre rules by Golub-Welsch.

#include <vector>

namespace hfilon {

enum class RuleKind { hermite, laguerre };

struct QuadRule {
  RuleKind kind;
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive
};

// Weight exp(-x^2) on the real line. 1 <= m <= 200.
QuadRule hermite_rule(int m);
// Weight exp(-t) on [0, inf). 1 <= m <= 200.
QuadRule laguerre_rule(int m);

// Default node counts for the initial-moment integrals.
inline constexpr int default_gh_nodes = 30;
inline constexpr int default_gl_nodes = 30;

}  // namespace hfilon
