#include "schedsim/task.hpp"

#include <algorithm>
#include <set>

namespace schedsim {

JobState make_job(const TaskSpec& spec) {
  JobState j;
  j.spec = spec;
  j.remaining = spec.burst;
  j.level = 0;
  j.state = RunState::NotArrived;
  j.last_enqueue = spec.arrival;
  return j;
}

std::vector<Violation> validate_workload(const Workload& w) {
  std::vector<Violation> out;
  if (w.tasks.empty()) {
    out.push_back({0, "non-empty"});
    return out;
  }

  std::set<JobId> seen;
  for (const TaskSpec& t : w.tasks) {
    if (t.burst.count() < 1) out.push_back({t.id, "burst >= 1"});
    if (!(t.deadline > t.arrival)) out.push_back({t.id, "deadline > arrival"});
    if (t.value < 0) out.push_back({t.id, "value >= 0"});
    if (!seen.insert(t.id).second) out.push_back({t.id, "unique id"});
  }

  // Ids must be exactly 0..n-1 (duplicates already reported above).
  const auto n = static_cast<JobId>(w.tasks.size());
  for (JobId id : seen) {
    if (id >= n) out.push_back({id, "dense ids"});
  }

  for (std::size_t i = 1; i < w.tasks.size(); ++i) {
    const TaskSpec& a = w.tasks[i - 1];
    const TaskSpec& b = w.tasks[i];
    if (std::pair(b.arrival.ticks(), b.id) < std::pair(a.arrival.ticks(), a.id))
      out.push_back({b.id, "sorted by arrival then id"});
  }
  return out;
}

signed_ticks_t slack(const JobState& j, TimePoint now) {
  return static_cast<signed_ticks_t>(j.spec.deadline.ticks()) -
         static_cast<signed_ticks_t>(now.ticks()) -
         static_cast<signed_ticks_t>(j.remaining.count());
}

}  // namespace schedsim
