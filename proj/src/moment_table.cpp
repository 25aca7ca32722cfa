#include "hfilon/moment_table.hpp"

#include <stdexcept>

namespace hfilon {

std::string method_name(MomentMethod m) {
  switch (m) {
    case MomentMethod::gaussian_ic: return "gaussian-ic";
    case MomentMethod::forward: return "forward";
    case MomentMethod::oliver_bvp: return "oliver-bvp";
    case MomentMethod::asymptotic_tail: return "asymptotic-tail";
    case MomentMethod::oracle: return "oracle";
  }
  return "unknown";
}

MomentMethod MomentTable::method_at(long n) const {
  for (const auto& r : ranges)
    if (n >= r.first && n <= r.last) return r.method;
  throw std::out_of_range("MomentTable::method_at: index not covered");
}

void add_range(MomentTable& t, MomentMethod m, long first, long last) {
  if (last < first) return;
  t.ranges.push_back({m, first, last});
}

}  // namespace hfilon
