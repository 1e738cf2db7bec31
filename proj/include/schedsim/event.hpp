#pragma once

#include <cstdint>
#include <queue>
#include <string_view>
#include <vector>

#include "schedsim/task.hpp"
#include "schedsim/time.hpp"

namespace schedsim {

// Tie rank at equal times is the enum value: completions settle before
// quantum expiries, then arrivals, then latency windows, then deadline
// re-checks. A job finishing exactly when another event lands is therefore
// already terminal when that event is handled.
enum class EventKind : int {
  Completion = 0,
  QuantumExpiry = 1,
  Arrival = 2,
  LatencyElapsed = 3,
  Reconfigure = 4,
};

std::string_view kind_name(EventKind k);

struct Event {
  TimePoint time{};
  EventKind kind = EventKind::Arrival;
  JobId job = 0;
  // Dispatch/window validity token; a mismatch at pop time means the event
  // was superseded and is skipped.
  std::uint64_t token = 0;
  // Global insertion counter, the final tiebreaker.
  std::uint64_t seq = 0;
};

// Min-queue over (time, kind rank, seq). seq is assigned at push, so events
// scheduled first win ties, which keeps runs fully deterministic.
class EventQueue {
 public:
  void push(TimePoint t, EventKind k, JobId j, std::uint64_t token = 0) {
    heap_.push(Event{t, k, j, token, next_seq_++});
  }
  bool empty() const { return heap_.empty(); }
  const Event& top() const { return heap_.top(); }
  Event pop() {
    Event e = heap_.top();
    heap_.pop();
    return e;
  }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return b.time < a.time;
      if (a.kind != b.kind) return static_cast<int>(b.kind) < static_cast<int>(a.kind);
      return b.seq < a.seq;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace schedsim
