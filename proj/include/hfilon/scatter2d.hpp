#pragma once
// Plane-wave scattering by the screen [-1,1] x {0}: hybrid basis of cubic
// B-splines times exp(+-i omega s) on graded meshes, oversampled collocation
// and L1 diagnostics.
//
// Conventions: the incident wave is exp(i omega (x cos theta - y sin theta)),
// the unknown is the jump of the normal derivative across the screen with the
// normal (0, 1), and the single-layer equation S[phi] = psi_i holds on the
// screen with S having kernel (i/4) H0(omega |s - t|). The geometrical optics
// term V0 = 2 d psi_i / dn is moved to the right-hand side.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "hfilon/oracle.hpp"

namespace hfilon {

struct GradedMesh {
  double sigma = 0.3;
  int Ng = 0;
  int p = 0;
  std::vector<int> J;                // J_1..J_Ng
  std::vector<double> points_plus;   // -1, t_{n,j}, 1; graded towards -1
  std::vector<double> points_minus;  // reflection, graded towards +1
};

// t_{n,1} = -1 + 2 sigma^{Ng+1-n}, J_n = p - floor((Ng+2-n) p / (Ng+1)) + 1,
// J_n equidistant points in each [t_{n,1}, t_{n+1,1}).
GradedMesh build_mesh(int p, int Ng, double sigma = 0.3);

// Cubic B-splines on the given breakpoints with end knots of multiplicity 4.
class SplineBasis {
 public:
  explicit SplineBasis(std::vector<double> breaks);
  int size() const { return static_cast<int>(breaks_.size()) + 2; }
  int cells() const { return static_cast<int>(breaks_.size()) - 1; }
  const std::vector<double>& breaks() const { return breaks_; }
  // Cells [first, last] on which basis i is nonzero.
  std::pair<int, int> support_cells(int i) const;
  // Polynomial piece of basis i on the given cell, evaluated at any s.
  double eval_on_cell(int i, int cell, double s) const;
  // Same piece at s = breaks()[cell] + d, accurate relative to the cell width.
  double eval_offset(int i, int cell, double d) const;
  // Basis i at s in [-1, 1].
  double eval(int i, double s) const;
  int cell_of(double s) const;

 private:
  std::vector<double> breaks_;
  std::vector<double> knots_;
};

struct IncidentWave {
  double theta = 0.785398163397448309616;  // pi / 4
  double omega = 1.0;
};

enum class EntryTag { nonosc, singular_osc, nonsingular_osc };
std::string tag_name(EntryTag t);

// Classification of the piece int_a^b V(s) exp(i sign omega s) H0(omega |s - y|) ds.
EntryTag classify_entry(double a, double b, double y, int sign, double omega,
                        double omega0 = 2.0, double eps = 1e-4);

struct AssemblyOptions {
  double omega0 = 2.0;
  double eps = 1e-4;
  int nu_fcc = 16;  // interior points per graded FCC panel
  int threads = 1;
  ToleranceSpec adaptive_tol{1e-15, 1e-11, 200000};
};

struct AssemblyStats {
  long nonosc = 0, singular_osc = 0, nonsingular_osc = 0;
};

struct Dof {
  int sign;   // +1 for V^+ exp(i omega s), -1 for V^- exp(-i omega s)
  int index;  // basis index within its mesh
};

struct CollocationSystem {
  Eigen::MatrixXcd matrix;  // M x N
  Eigen::VectorXcd rhs;     // M
  std::vector<double> points;
  std::vector<Dof> dofs;
  int oversampling = 3;
};

// M = 3N collocation points: the union of both meshes plus equispaced extra
// points, extra points assigned to the widest gaps first.
std::vector<double> collocation_points(const GradedMesh& mesh, long M);

CollocationSystem assemble(const GradedMesh& mesh, const IncidentWave& wave,
                           const AssemblyOptions& opt = {}, AssemblyStats* stats = nullptr);

// Entry (row, col) by plain adaptive quadrature over each cell, split at the
// collocation point. Independent of the Filon engines.
cplx entry_oracle(const GradedMesh& mesh, const IncidentWave& wave, double y, const Dof& dof,
                  const ToleranceSpec& tol = {1e-15, 1e-11, 400000});

// (1/4) int |V(s) H0(omega |s - y|)| ds over the support of the basis: the
// scale against which entry errors are measured when the entry itself
// cancels to far below its integrand.
double entry_scale(const GradedMesh& mesh, const IncidentWave& wave, double y, const Dof& dof);

struct Solution {
  Eigen::VectorXcd coeffs;
  double residual = 0.0;  // ||A c - b|| / ||b||, 0 for b = 0
  long rank = 0;
  bool rank_deficient = false;
  double cond_estimate = 0.0;  // ratio of extreme |R_ii|
};

Solution solve_system(const CollocationSystem& sys);

// u(s) = sum V_n^+(s) e^{i omega s} + V_n^-(s) e^{-i omega s}.
class Density {
 public:
  Density(const GradedMesh& mesh, const std::vector<Dof>& dofs, Eigen::VectorXcd coeffs,
          double omega);
  cplx operator()(double s) const;
  const std::vector<double>& breaks() const { return breaks_; }

 private:
  SplineBasis plus_, minus_;
  std::vector<Dof> dofs_;
  Eigen::VectorXcd coeffs_;
  double omega_;
  std::vector<double> breaks_;  // union of both meshes
};

// ||u - ref||_1 / ||ref||_1 over [-1, 1] by adaptive quadrature on the cells
// given by breaks, refined to resolve the frequency omega.
double rel_l1_error(const std::function<cplx(double)>& u, const std::function<cplx(double)>& ref,
                    const std::vector<double>& breaks, double omega);

struct ScatterRun {
  GradedMesh mesh;
  CollocationSystem system;
  Solution solution;
  double assembly_seconds = 0.0;  // minimum over the repeats
  AssemblyStats stats;
  double omega = 0.0;
  Density density() const;
};

// Builds the mesh, assembles (keeping the minimum wall time over the repeats)
// and solves.
ScatterRun run_scatter(int p, int Ng, double sigma, const IncidentWave& wave, int repeats = 3,
                       const AssemblyOptions& opt = {});

}  // namespace hfilon
