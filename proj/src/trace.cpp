#include "schedsim/trace.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace schedsim {

std::string_view kind_name(EventKind k) {
  switch (k) {
    case EventKind::Completion: return "completion";
    case EventKind::QuantumExpiry: return "quantum_expiry";
    case EventKind::Arrival: return "arrival";
    case EventKind::LatencyElapsed: return "latency_elapsed";
    case EventKind::Reconfigure: return "reconfigure";
  }
  return "?";
}

void Trace::add_event(TimePoint t, EventKind k, JobId j, int level) {
  events.push_back({t, k, j, level});
}

void Trace::add_segment(JobId j, TimePoint start, TimePoint end) {
  if (!(end > start)) throw std::logic_error("empty trace segment");
  if (!segments.empty()) {
    Segment& last = segments.back();
    if (start < last.end) throw std::logic_error("overlapping trace segments");
    if (last.job == j && last.end == start) {
      last.end = end;
      return;
    }
  }
  segments.push_back({j, start, end});
}

TimeDelta Trace::busy() const {
  TimeDelta total{};
  for (const Segment& s : segments) total += s.end - s.start;
  return total;
}

bool Trace::conservation_holds() const {
  return busy().count() + idle.count() + latency.count() == makespan.ticks();
}

std::vector<TimePoint> scheduling_points(const Trace& t) {
  std::vector<TimePoint> out;
  for (const TraceEvent& e : t.events) {
    switch (e.kind) {
      case EventKind::Arrival:
      case EventKind::Completion:
      case EventKind::QuantumExpiry:
      case EventKind::Reconfigure:
        if (out.empty() || out.back() != e.time) out.push_back(e.time);
        break;
      case EventKind::LatencyElapsed:
        break;
    }
  }
  return out;
}

void serialize(const Trace& t, std::ostream& os) {
  os << "# schedsim trace v1\n";
  os << "# workload: " << t.workload << "\n";
  os << "# policy: " << t.policy << "\n";
  os << "# makespan: " << t.makespan.ticks() << "\n";
  os << "# busy: " << t.busy().count() << "\n";
  os << "# idle: " << t.idle.count() << "\n";
  os << "# latency: " << t.latency.count() << "\n";
  os << "[events]\n";
  os << "time,kind,job_id,level\n";
  for (const TraceEvent& e : t.events)
    os << e.time.ticks() << "," << kind_name(e.kind) << "," << e.job << "," << e.level << "\n";
  os << "[segments]\n";
  os << "job_id,start,end\n";
  for (const Segment& s : t.segments)
    os << s.job << "," << s.start.ticks() << "," << s.end.ticks() << "\n";
}

std::string to_csv(const Trace& t) {
  std::ostringstream os;
  serialize(t, os);
  return os.str();
}

}  // namespace schedsim
