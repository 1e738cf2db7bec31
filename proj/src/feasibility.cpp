#include "schedsim/feasibility.hpp"

#include <algorithm>
#include <cassert>

namespace schedsim {

bool feasible_sorted(const std::vector<DemandEntry>& entries, TimePoint now) {
  ticks_t cumulative = 0;
  for (const DemandEntry& e : entries) {
    cumulative += e.remaining.count();
    if (e.deadline < now) return false;
    if (cumulative > (e.deadline - now).count()) return false;
  }
  return true;
}

bool feasible(std::vector<DemandEntry> entries, TimePoint now) {
  std::sort(entries.begin(), entries.end(),
            [](const DemandEntry& a, const DemandEntry& b) { return a.deadline < b.deadline; });
  return feasible_sorted(entries, now);
}

}  // namespace schedsim
