#pragma once

#include <vector>

#include "schedsim/task.hpp"
#include "schedsim/time.hpp"

namespace schedsim {

// Work still owed and the instant it is owed by.
struct DemandEntry {
  TimeDelta remaining{};
  TimePoint deadline{};
};

// True when every prefix of the deadline-sorted entries fits before its
// deadline starting at `now`: for each entry, the cumulative remaining of
// all entries due no later than it must not exceed (deadline - now).
// Entries must already be sorted by deadline.
bool feasible_sorted(const std::vector<DemandEntry>& entries, TimePoint now);

// Convenience overload that copies and sorts.
bool feasible(std::vector<DemandEntry> entries, TimePoint now);

}  // namespace schedsim
