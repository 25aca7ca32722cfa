#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numeric>

#include "hfilon/scatter2d.hpp"

using namespace hfilon;

TEST_CASE("graded mesh layout") {
  const GradedMesh m = build_mesh(3, 6, 0.3);
  CHECK(m.J == std::vector<int>{1, 2, 2, 3, 3, 4});
  CHECK(m.points_plus.front() == -1.0);
  CHECK(m.points_plus.back() == 1.0);
  CHECK(m.points_plus.size() == 2 + 15);
  CHECK(m.points_plus[1] == doctest::Approx(-1.0 + 2.0 * std::pow(0.3, 6)));
  for (std::size_t k = 0; k < m.points_plus.size(); ++k)
    CHECK(m.points_minus[k] == -m.points_plus[m.points_plus.size() - 1 - k]);
  CHECK_THROWS_AS(build_mesh(3, 6, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(0, 6), std::invalid_argument);
}

TEST_CASE("cubic B-splines form a partition of unity with local support") {
  const GradedMesh m = build_mesh(3, 6);
  const SplineBasis b(m.points_plus);
  CHECK(b.size() == static_cast<int>(m.points_plus.size()) + 2);
  for (double s = -1.0; s <= 1.0; s += 0.0137) {
    double sum = 0.0;
    for (int i = 0; i < b.size(); ++i) {
      const double v = b.eval(i, s);
      CHECK(v >= -1e-14);
      const auto [c0, c1] = b.support_cells(i);
      const int cell = b.cell_of(s);
      if (cell < c0 || cell > c1) CHECK(v == 0.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  }
  const int cell = 3;
  const double a = b.breaks()[cell];
  CHECK(b.eval_offset(4, cell, 1e-3) == doctest::Approx(b.eval_on_cell(4, cell, a + 1e-3)));
}

TEST_CASE("collocation points include both meshes and fill the widest gaps first") {
  const GradedMesh m = build_mesh(3, 6);
  const auto pts = collocation_points(m, 114);
  CHECK(pts.size() == 114);
  CHECK(std::is_sorted(pts.begin(), pts.end()));
  for (double x : m.points_plus) CHECK(std::find(pts.begin(), pts.end(), x) != pts.end());
  CHECK_THROWS_AS(collocation_points(m, 5), std::invalid_argument);
}

TEST_CASE("entry classification") {
  CHECK(classify_entry(0.0, 0.01, 0.5, 1, 100.0) == EntryTag::nonosc);
  CHECK(classify_entry(0.0, 0.5, 0.2, 1, 100.0) == EntryTag::singular_osc);
  CHECK(classify_entry(0.0, 0.5, 0.50005, -1, 100.0) == EntryTag::singular_osc);
  CHECK(classify_entry(0.0, 0.5, 0.9, 1, 100.0) == EntryTag::nonosc);
  CHECK(classify_entry(0.0, 0.5, -0.4, -1, 100.0) == EntryTag::nonosc);
  CHECK(classify_entry(0.0, 0.5, -0.4, 1, 100.0) == EntryTag::nonsingular_osc);
  CHECK(classify_entry(0.0, 0.5, 0.9, -1, 100.0) == EntryTag::nonsingular_osc);
  CHECK(tag_name(EntryTag::singular_osc) == "singular_osc");
}

TEST_CASE("assembled entries agree with the oracle at omega = 100") {
  const GradedMesh m = build_mesh(3, 6);
  const IncidentWave wave{IncidentWave{}.theta, 100.0};
  AssemblyStats stats;
  AssemblyOptions opt;
  opt.threads = 2;
  const CollocationSystem sys = assemble(m, wave, opt, &stats);
  CHECK(sys.matrix.rows() == 3 * sys.matrix.cols());
  CHECK(stats.nonosc > 0);
  CHECK(stats.singular_osc > 0);
  CHECK(stats.nonsingular_osc > 0);
  for (long l : {0L, 17L, 57L, 90L, 113L})
    for (long c : {0L, 9L, 20L, 37L}) {
      const cplx o = entry_oracle(m, wave, sys.points[l], sys.dofs[c], {1e-16, 1e-10, 400000});
      const double scale = std::max(std::abs(o), entry_scale(m, wave, sys.points[l], sys.dofs[c]));
      CHECK(std::abs(sys.matrix(l, c) - o) <= 1e-8 * scale);
    }
  // Thread count does not change the result.
  opt.threads = 1;
  const CollocationSystem serial = assemble(m, wave, opt);
  CHECK((serial.matrix - sys.matrix).norm() == 0.0);
}

TEST_CASE("least-squares residual and L1 error shrink as p grows") {
  const IncidentWave wave{IncidentWave{}.theta, 50.0};
  const ScatterRun r3 = run_scatter(3, 6, 0.3, wave, 1), r5 = run_scatter(5, 10, 0.3, wave, 1);
  CHECK(r5.solution.residual < r3.solution.residual);
  CHECK(!r3.solution.rank_deficient);
  const Density d3 = r3.density(), d5 = r5.density();
  CHECK(rel_l1_error(d5, d5, d5.breaks(), 50.0) == 0.0);
  CHECK(rel_l1_error(d3, d5, d5.breaks(), 50.0) > 0.0);
}
