#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "schedsim/config.hpp"
#include "schedsim/errors.hpp"
#include "schedsim/feasibility.hpp"
#include "schedsim/policy.hpp"

namespace schedsim {

// Level count for n live jobs: clamp(ceil(log2(n + 1)), min, max).
int level_count_for(std::size_t n_live, const NmlfqConfig& cfg);

// Quantum per level: base_quantum * 2^k.
std::vector<TimeDelta> quanta_for(int levels, const NmlfqConfig& cfg);

struct AdmissionDecision {
  Admission verdict = Admission::Accepted;
  std::string reason;  // set when rejected
};

// Guarantee-preserving admission: the candidate joins only if the live jobs
// plus the candidate, each with its current remaining work, fit before
// their deadlines starting at `now` (see feasible()).
AdmissionDecision planning_admit(std::vector<DemandEntry> live, DemandEntry candidate,
                                 TimePoint now);

// Ready structure of the multi-level policy: level 0 is deadline-ordered,
// levels >= 1 are FIFO. Every mutation keeps the level-0 order and the
// one-position-per-job invariant.
class ReadyTable {
 public:
  explicit ReadyTable(int levels = 2);

  int level_count() const { return static_cast<int>(levels_.size()); }
  std::size_t size() const { return index_.size(); }
  bool empty() const { return index_.empty(); }
  bool contains(JobId j) const { return index_.count(j) != 0; }
  int level_of(JobId j) const;

  // New arrival; enters level 0. Throws DuplicateJob if already present.
  void insert(JobState& j, TimePoint now);

  // Urgency promotion: move to level 0 wherever the job currently sits.
  void move_to_front(JobState& j, TimePoint now);

  // Aging promotion: one level up (floor 0), enqueued at the tail there.
  void promote_one(JobState& j, TimePoint now);

  // Re-entry after the job was stopped: demoted jobs go to the tail of the
  // next level down, partially-run jobs resume at the front of their level.
  void enqueue_tail(JobState& j, int level, TimePoint now);
  void enqueue_front(JobState& j, int level, TimePoint now);

  // Removes the tail of the lowest non-empty level. `expected` must name
  // that job; otherwise StaleIndex. Throws EmptyTable when empty.
  JobId remove_last(JobId expected);

  void erase(JobId j);

  std::optional<int> top_level() const;
  JobId head(int level) const;

  // Shrinks or grows the level count; jobs at levels >= count move to the
  // new bottom level preserving order. Returns the moved ids and updates
  // their JobState levels.
  std::vector<JobId> set_level_count(int count, std::vector<JobState>& jobs);

  // All ids, top level first, front to back. For tests and live-set scans.
  std::vector<JobId> snapshot() const;

  // Structural self-check: index and queues agree, level-0 order holds.
  bool integrity(const std::vector<JobState>& jobs) const;

 private:
  struct Entry {
    JobId id;
    TimePoint deadline;
    TimePoint arrival;
  };
  bool entry_before(const Entry& a, const Entry& b) const;
  void place(JobState& j, int level, bool at_front, TimePoint now);

  std::vector<std::deque<Entry>> levels_;
  std::unordered_map<JobId, int> index_;  // lookups only, never iterated
};

// Adaptive multi-level feedback queue. Arrivals enter the deadline-ordered
// top level; quantum exhaustion demotes one level (tail); waiting jobs age
// back up; jobs running out of slack jump to the top level; the level count
// tracks log2 of the live-job count. In planning mode an admission test
// turns arrivals away rather than miss accepted deadlines, and dispatch
// budgets are capped so earlier-deadline admitted work is never starved
// past its slack (see select()).
class NmlfqPolicy final : public Policy {
 public:
  explicit NmlfqPolicy(NmlfqConfig cfg);

  std::string_view name() const override { return "nmlfq"; }
  Admission on_arrival(std::vector<JobState>& jobs, JobId j, TimePoint now) override;
  void on_completion(std::vector<JobState>& jobs, JobId j, TimePoint now) override;
  void on_quantum_expiry(std::vector<JobState>& jobs, JobId j, TimePoint now,
                         TimeDelta ran) override;
  void on_preempt(std::vector<JobState>& jobs, JobId j, TimePoint now, TimeDelta ran) override;
  void on_dispatch(std::vector<JobState>& jobs, JobId j, TimePoint now) override;
  void on_abort(std::vector<JobState>& jobs, JobId j, TimePoint now) override;
  Decision select(std::vector<JobState>& jobs, const std::vector<JobId>& ready,
                  std::optional<JobId> running, TimePoint now) override;

  const ReadyTable& table() const { return table_; }
  const std::vector<TimeDelta>& quanta() const { return quanta_; }

 private:
  TimeDelta aging_threshold() const;
  void reconfigure(std::size_t n_live, std::vector<JobState>& jobs);
  void apply_promotions(std::vector<JobState>& jobs, TimePoint now);
  ticks_t& used(JobId j);

  NmlfqConfig cfg_;
  ReadyTable table_;
  std::vector<TimeDelta> quanta_;
  // Ticks consumed at the current level, per job; demotion happens when
  // this reaches the level quantum, so partial slices accumulate instead
  // of granting a fresh quantum on every resume. Reset on any level change.
  std::vector<ticks_t> used_;
};

}  // namespace schedsim
