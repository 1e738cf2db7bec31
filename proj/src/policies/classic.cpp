#include "schedsim/policies/classic.hpp"

#include <algorithm>
#include <cassert>

namespace schedsim {

bool deadline_before(const JobState& a, const JobState& b) {
  if (a.spec.deadline != b.spec.deadline) return a.spec.deadline < b.spec.deadline;
  if (a.spec.arrival != b.spec.arrival) return a.spec.arrival < b.spec.arrival;
  return a.spec.id < b.spec.id;
}

JobId edf_select(const std::vector<JobState>& jobs, const std::vector<JobId>& candidates) {
  assert(!candidates.empty());
  JobId best = candidates.front();
  for (JobId j : candidates)
    if (deadline_before(jobs[j], jobs[best])) best = j;
  return best;
}

JobId fcfs_select(const std::vector<JobState>& jobs, const std::vector<JobId>& candidates) {
  assert(!candidates.empty());
  JobId best = candidates.front();
  for (JobId j : candidates) {
    const JobState& a = jobs[j];
    const JobState& b = jobs[best];
    if (a.spec.arrival < b.spec.arrival ||
        (a.spec.arrival == b.spec.arrival && a.spec.id < b.spec.id))
      best = j;
  }
  return best;
}

Decision EdfPolicy::select(std::vector<JobState>& jobs, const std::vector<JobId>& ready,
                           std::optional<JobId> running, TimePoint) {
  std::vector<JobId> candidates = ready;
  if (running) candidates.push_back(*running);
  if (candidates.empty()) return {};
  return Decision{edf_select(jobs, candidates), std::nullopt, {}};
}

Decision FcfsPolicy::select(std::vector<JobState>& jobs, const std::vector<JobId>& ready,
                            std::optional<JobId> running, TimePoint) {
  // Non-preemptive: the incumbent is never displaced.
  if (running) return Decision{running, std::nullopt, {}};
  if (ready.empty()) return {};
  return Decision{fcfs_select(jobs, ready), std::nullopt, {}};
}

Admission RrPolicy::on_arrival(std::vector<JobState>&, JobId j, TimePoint) {
  fifo_.push_back(j);
  return Admission::Accepted;
}

void RrPolicy::on_quantum_expiry(std::vector<JobState>&, JobId j, TimePoint, TimeDelta) {
  fifo_.push_back(j);
}

void RrPolicy::on_preempt(std::vector<JobState>&, JobId j, TimePoint, TimeDelta) {
  // Displaced mid-quantum; RR itself never does this, but an engine-driven
  // abort of another job can. The displaced job keeps its turn.
  fifo_.push_front(j);
}

void RrPolicy::on_dispatch(std::vector<JobState>&, JobId j, TimePoint) {
  assert(!fifo_.empty() && fifo_.front() == j);
  (void)j;
  fifo_.pop_front();
}

void RrPolicy::on_abort(std::vector<JobState>&, JobId j, TimePoint) {
  auto it = std::find(fifo_.begin(), fifo_.end(), j);
  if (it != fifo_.end()) fifo_.erase(it);
}

Decision RrPolicy::select(std::vector<JobState>&, const std::vector<JobId>&,
                          std::optional<JobId> running, TimePoint) {
  // The incumbent finishes its slice: returning it with no quantum keeps
  // the originally armed expiry, so interleaved arrivals cannot stretch or
  // reset the slice.
  if (running) return Decision{running, std::nullopt, {}};
  if (fifo_.empty()) return {};
  return Decision{fifo_.front(), cfg_.quantum, {}};
}

}  // namespace schedsim
