#pragma once
// CSV writers for moment tables and scattering runs.

#include <ostream>
#include <string>
#include <vector>

#include "hfilon/moment_table.hpp"

namespace hfilon {

// "# key=value ..." line followed by n,re,im,method rows.
void write_moment_csv(std::ostream& os, const MomentTable& t, const std::string& config);

struct ScatterRow {
  double omega = 0.0;
  int p = 0, Ng = 0;
  long dofs = 0;
  double assembly_seconds = 0.0;
  double residual = 0.0;
  double rel_l1_vs_ref = 0.0;  // negative when no reference was computed
};

void write_scatter_csv(std::ostream& os, const std::vector<ScatterRow>& rows);

}  // namespace hfilon
