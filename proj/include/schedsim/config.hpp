#pragma once

#include <optional>

#include "schedsim/rational.hpp"
#include "schedsim/time.hpp"

namespace schedsim {

enum class AdmissionMode { Planning, AcceptAll };

// Knobs for the adaptive multi-level policy. The level count is recomputed
// from the live-job count on every arrival and completion; level k gets a
// quantum of base_quantum * 2^k.
struct NmlfqConfig {
  TimeDelta base_quantum = ms(1);
  int min_levels = 2;
  int max_levels = 8;
  // Promotion after waiting this long in one queue. Unset means
  // 10 * base_quantum * current level count.
  std::optional<TimeDelta> aging_threshold;
  // A ready job whose slack drops below urgency_factor * remaining jumps to
  // the top level.
  Rat urgency_factor = 1;
  AdmissionMode admission = AdmissionMode::Planning;
};

struct RrConfig {
  TimeDelta quantum = ms(1);
};

struct SimConfig {
  // Cost of switching to a different job than the one that last ran,
  // charged before the new segment starts. Applies to the first dispatch
  // too; resuming the same job is free.
  TimeDelta dispatch_latency{};
  TimeDelta context_switch_cost{};
  // Unset defers to the policy default: best-effort policies kill hopeless
  // jobs at the deadline instant, the others let late jobs run out.
  std::optional<bool> abort_on_miss;
  // Hard cap on simulated time; jobs still live there count as misses.
  std::optional<TimePoint> horizon;
  NmlfqConfig nmlfq;
  RrConfig rr;
};

}  // namespace schedsim
