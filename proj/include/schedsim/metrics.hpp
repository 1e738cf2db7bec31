#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "schedsim/engine.hpp"
#include "schedsim/errors.hpp"
#include "schedsim/rational.hpp"
#include "schedsim/task.hpp"
#include "schedsim/trace.hpp"

namespace schedsim {

struct JobMetrics {
  JobId id = 0;
  // First execution start minus arrival; includes any dispatch latency.
  // Absent for jobs that never ran.
  std::optional<TimeDelta> response;
  // Completion minus arrival; absent unless completed. waiting is
  // turnaround minus burst.
  std::optional<TimeDelta> turnaround;
  std::optional<TimeDelta> waiting;
  bool met_deadline = false;
  Rat value_accrued = 0;
};

struct MetricsReport {
  std::string workload;
  std::string policy;
  std::vector<JobMetrics> per_job;

  std::size_t jobs = 0;
  std::size_t dispatched = 0;
  std::size_t completed = 0;
  std::size_t misses = 0;

  // Raw tick sums, kept so aggregation across workloads can pool exactly.
  ticks_t response_sum = 0;
  ticks_t turnaround_sum = 0;
  ticks_t waiting_sum = 0;
  ticks_t busy_ticks = 0;
  ticks_t makespan_ticks = 0;

  Rat miss_ratio = 0;
  Rat cpu_utilization = 0;
  Rat avg_response = 0;    // over dispatched jobs
  Rat avg_turnaround = 0;  // over completed jobs
  Rat avg_waiting = 0;     // over completed jobs
  Rat total_value = 0;
  TimeDelta overall_turnaround{};  // max completion - min arrival
};

// Derives per-job and aggregate figures from a finished run. All ratios are
// exact rationals. Throws IncompleteTrace if any job is still live.
MetricsReport compute(const Trace& trace, const std::vector<JobState>& jobs);

struct ComparisonRow {
  std::string workload;  // "aggregate" for the pooled per-policy row
  std::string policy;
  std::size_t jobs = 0;
  std::size_t dispatched = 0;
  std::size_t completed = 0;
  std::size_t misses = 0;
  Rat miss_ratio = 0;
  Rat avg_response = 0;
  Rat avg_turnaround = 0;
  Rat avg_waiting = 0;
  Rat cpu_utilization = 0;
  Rat total_value = 0;
};

struct ReductionRow {
  std::string versus;     // the policy nmlfq is compared against
  Rat other_response = 0; // that policy's pooled avg_response
  Rat nmlfq_response = 0;
  Rat reduction = 0;      // (other - nmlfq) / other, 0 when other is 0
};

// Per-(workload, policy) rows plus one pooled aggregate row per policy.
// When "nmlfq" is among the policies, `reductions` holds its response-time
// reduction against every other policy.
struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  std::vector<ReductionRow> reductions;
};

// Groups reports by workload and policy. Every policy must cover the same
// workload set; otherwise MismatchedSuites.
ComparisonTable compare(const std::vector<MetricsReport>& reports);

std::string metrics_csv(const MetricsReport& r);
std::string comparison_csv(const ComparisonTable& t);
std::string comparison_text(const ComparisonTable& t);
// Bar chart of pooled avg_response per policy.
std::string comparison_svg(const ComparisonTable& t);

}  // namespace schedsim
