#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "schedsim/task.hpp"
#include "schedsim/time.hpp"

namespace schedsim {

enum class Admission { Accepted, Rejected };

// What to run next. `job` must be one of the ready jobs or the job that was
// running when the decision point was reached; absent means the CPU idles
// until the next event. `quantum` is the execution budget measured from the
// moment the segment (re)starts; absent means run to completion. `aborts`
// are ready jobs the policy gives up on; the engine marks them Aborted.
struct Decision {
  std::optional<JobId> job;
  std::optional<TimeDelta> quantum;
  std::vector<JobId> aborts;
};

// Scheduling discipline driven by the engine. The engine syncs the running
// job's `remaining` before every callback, so policies always see current
// state. `jobs` is indexed by JobId.
//
// Call protocol per decision point: select() picks; if the pick differs from
// the running job the engine stops that job and reports on_preempt with the
// ticks it ran; when the picked job's segment actually starts (immediately,
// or after the dispatch-latency window) the engine calls on_dispatch.
// Policies that keep their own ready structures remove the job on dispatch
// and re-add it on preempt/expiry.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string_view name() const = 0;

  // Default deadline-miss handling for this discipline (see
  // SimConfig::abort_on_miss).
  virtual bool aborts_on_miss() const { return false; }

  // A Rejected verdict makes the engine abort the job at its arrival
  // instant; it never becomes ready.
  virtual Admission on_arrival(std::vector<JobState>&, JobId, TimePoint) {
    return Admission::Accepted;
  }
  virtual void on_completion(std::vector<JobState>&, JobId, TimePoint) {}
  virtual void on_quantum_expiry(std::vector<JobState>&, JobId, TimePoint, TimeDelta /*ran*/) {}
  virtual void on_preempt(std::vector<JobState>&, JobId, TimePoint, TimeDelta /*ran*/) {}
  virtual void on_dispatch(std::vector<JobState>&, JobId, TimePoint) {}
  virtual void on_abort(std::vector<JobState>&, JobId, TimePoint) {}

  // `ready` lists Ready jobs sorted by id; the running job (if any) is
  // passed separately and is an eligible pick, meaning "keep running it".
  virtual Decision select(std::vector<JobState>& jobs, const std::vector<JobId>& ready,
                          std::optional<JobId> running, TimePoint now) = 0;
};

}  // namespace schedsim
