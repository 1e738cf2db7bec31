#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schedsim/rational.hpp"
#include "schedsim/time.hpp"

namespace schedsim {

using JobId = std::uint32_t;

// One-shot job description. Deadlines are absolute instants; value is the
// benefit accrued only when the job completes by its deadline.
struct TaskSpec {
  JobId id = 0;
  TimePoint arrival{};
  TimeDelta burst{};
  TimePoint deadline{};
  Rat value = 1;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

enum class RunState { NotArrived, Ready, Running, Completed, Aborted };

// Mutable per-run state. `level` and `last_enqueue` belong to the policy
// (only the multi-level policy uses them); the rest is engine-owned.
struct JobState {
  TaskSpec spec;
  TimeDelta remaining{};
  int level = 0;
  RunState state = RunState::NotArrived;
  std::optional<TimePoint> first_dispatch;
  std::optional<TimePoint> completion;
  TimePoint last_enqueue{};
};

JobState make_job(const TaskSpec& spec);

struct Workload {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::vector<TaskSpec> tasks;

  friend bool operator==(const Workload&, const Workload&) = default;
};

struct Violation {
  JobId id = 0;
  std::string rule;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Structural checks: non-empty, unique dense ids, burst >= 1,
// deadline > arrival, value >= 0, tasks sorted by (arrival, id).
// Returns one entry per breach; empty means the workload is usable.
std::vector<Violation> validate_workload(const Workload& w);

// Laxity at `now`: deadline - now - remaining. Negative once the job can no
// longer complete in time.
signed_ticks_t slack(const JobState& j, TimePoint now);

}  // namespace schedsim
