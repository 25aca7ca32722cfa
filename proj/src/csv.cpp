#include "hfilon/csv.hpp"

#include <cstdio>

namespace hfilon {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_moment_csv(std::ostream& os, const MomentTable& t, const std::string& config) {
  os << "# " << config << "\n";
  os << "n,re,im,method\n";
  for (long n = 0; n <= t.N(); ++n)
    os << n << ',' << fmt(t.values[n].real()) << ',' << fmt(t.values[n].imag()) << ','
       << method_name(t.method_at(n)) << '\n';
}

void write_scatter_csv(std::ostream& os, const std::vector<ScatterRow>& rows) {
  os << "omega,p,Ng,dofs,assembly_seconds,residual,rel_l1_vs_ref\n";
  for (const auto& r : rows)
    os << fmt(r.omega) << ',' << r.p << ',' << r.Ng << ',' << r.dofs << ','
       << fmt(r.assembly_seconds) << ',' << fmt(r.residual) << ',' << fmt(r.rel_l1_vs_ref) << '\n';
}

}  // namespace hfilon
