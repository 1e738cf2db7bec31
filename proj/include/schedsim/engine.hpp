#pragma once

#include <vector>

#include "schedsim/config.hpp"
#include "schedsim/errors.hpp"
#include "schedsim/policy.hpp"
#include "schedsim/task.hpp"
#include "schedsim/trace.hpp"

namespace schedsim {

enum class RunStatus {
  Complete,
  // The horizon cut the run short with live jobs; the trace is still
  // complete up to the horizon and leftover jobs are recorded as aborted.
  HorizonExceeded,
};

struct RunResult {
  Trace trace;
  std::vector<JobState> jobs;
  RunStatus status = RunStatus::Complete;
};

// Discrete-event simulation of one policy over one workload on a single
// CPU. Deterministic: identical inputs give a byte-identical serialized
// trace. Throws ValidationError on a bad workload and
// PolicyContractViolation when the policy breaks the Decision contract.
RunResult run(const Workload& w, Policy& policy, const SimConfig& cfg = {});

}  // namespace schedsim
