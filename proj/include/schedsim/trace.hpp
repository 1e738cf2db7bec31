#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "schedsim/event.hpp"
#include "schedsim/task.hpp"
#include "schedsim/time.hpp"

namespace schedsim {

struct TraceEvent {
  TimePoint time{};
  EventKind kind = EventKind::Arrival;
  JobId job = 0;
  int level = 0;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

// Maximal run of one job on the CPU: [start, end), end exclusive.
struct Segment {
  JobId job = 0;
  TimePoint start{};
  TimePoint end{};

  friend bool operator==(const Segment&, const Segment&) = default;
};

// Full account of a run. Segment time + idle + latency covers the makespan
// exactly; there is no unaccounted tick.
struct Trace {
  std::string workload;
  std::string policy;
  std::vector<TraceEvent> events;
  std::vector<Segment> segments;
  TimeDelta idle{};
  TimeDelta latency{};
  TimePoint makespan{};

  void add_event(TimePoint t, EventKind k, JobId j, int level);
  // Appends a non-empty execution interval, coalescing with the previous
  // segment when the same job continues without a gap.
  void add_segment(JobId j, TimePoint start, TimePoint end);

  TimeDelta busy() const;
  bool conservation_holds() const;
};

// Instants at which the policy was consulted: every arrival, completion,
// quantum expiry and deadline abort. Sorted, deduplicated.
std::vector<TimePoint> scheduling_points(const Trace& t);

void serialize(const Trace& t, std::ostream& os);
std::string to_csv(const Trace& t);

}  // namespace schedsim
