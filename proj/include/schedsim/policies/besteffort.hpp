#pragma once

#include <optional>

#include "schedsim/feasibility.hpp"
#include "schedsim/policy.hpp"
#include "schedsim/rational.hpp"

namespace schedsim {

// Value density of a candidate: value per tick of work left. The primary
// sort key of both best-effort disciplines.
struct PvdEntry {
  JobId job = 0;
  Rat value;
  TimeDelta remaining{};
  TimePoint deadline{};
  TimePoint arrival{};
};

// density(a) > density(b), exact; ties by earlier deadline, then lower id.
bool pvd_greater(const PvdEntry& a, const PvdEntry& b);

struct BestEffortChoice {
  std::optional<JobId> job;
  // Jobs whose deadlines have already passed; they accrue nothing.
  std::vector<JobId> aborts;
  // Deadline-ordered feasible schedule the dispatch came from (for tests).
  std::vector<JobId> schedule;
};

// Greedy insertion in descending value density: each candidate joins the
// deadline-ordered tentative schedule only if the schedule stays feasible.
// Dispatches the earliest-deadline member. When no candidate fits, falls
// back to the earliest-deadline survivor so the CPU never idles over a
// non-empty ready set.
BestEffortChoice dasa_select(const std::vector<JobState>& jobs,
                             const std::vector<JobId>& candidates, TimePoint now);

// Deadline-ordered schedule shedding the lowest value density (ties: later
// deadline, then higher id) until feasible. Shed jobs stay ready and are
// reconsidered at the next decision point. Same idle-avoidance fallback.
BestEffortChoice lbesa_select(const std::vector<JobState>& jobs,
                              const std::vector<JobId>& candidates, TimePoint now);

class DasaPolicy final : public Policy {
 public:
  std::string_view name() const override { return "dasa"; }
  bool aborts_on_miss() const override { return true; }
  Decision select(std::vector<JobState>& jobs, const std::vector<JobId>& ready,
                  std::optional<JobId> running, TimePoint now) override;
};

class LbesaPolicy final : public Policy {
 public:
  std::string_view name() const override { return "lbesa"; }
  bool aborts_on_miss() const override { return true; }
  Decision select(std::vector<JobState>& jobs, const std::vector<JobId>& ready,
                  std::optional<JobId> running, TimePoint now) override;
};

}  // namespace schedsim
