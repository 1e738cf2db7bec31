#pragma once

#include <deque>

#include "schedsim/config.hpp"
#include "schedsim/policy.hpp"

namespace schedsim {

// Deadline order with frozen tie-break (deadline, arrival, id). Shared by
// every deadline-driven discipline so ties resolve identically everywhere.
bool deadline_before(const JobState& a, const JobState& b);

// Minimal job under deadline order. Precondition: candidates non-empty.
JobId edf_select(const std::vector<JobState>& jobs, const std::vector<JobId>& candidates);

// Minimal job under (arrival, id). Precondition: candidates non-empty.
JobId fcfs_select(const std::vector<JobState>& jobs, const std::vector<JobId>& candidates);

// Preemptive earliest-deadline-first. No quantum: a job runs until it
// completes or a newly arrived job has an earlier deadline.
class EdfPolicy final : public Policy {
 public:
  std::string_view name() const override { return "edf"; }
  Decision select(std::vector<JobState>& jobs, const std::vector<JobId>& ready,
                  std::optional<JobId> running, TimePoint now) override;
};

// Non-preemptive arrival order: whoever is running keeps the CPU.
class FcfsPolicy final : public Policy {
 public:
  std::string_view name() const override { return "fcfs"; }
  Decision select(std::vector<JobState>& jobs, const std::vector<JobId>& ready,
                  std::optional<JobId> running, TimePoint now) override;
};

// Cyclic FIFO with a fixed quantum; expired jobs re-enter at the tail.
class RrPolicy final : public Policy {
 public:
  explicit RrPolicy(RrConfig cfg) : cfg_(cfg) {}

  std::string_view name() const override { return "rr"; }
  Admission on_arrival(std::vector<JobState>&, JobId j, TimePoint) override;
  void on_quantum_expiry(std::vector<JobState>&, JobId j, TimePoint, TimeDelta) override;
  void on_preempt(std::vector<JobState>&, JobId j, TimePoint, TimeDelta) override;
  void on_dispatch(std::vector<JobState>&, JobId j, TimePoint) override;
  void on_abort(std::vector<JobState>&, JobId j, TimePoint) override;
  Decision select(std::vector<JobState>& jobs, const std::vector<JobId>& ready,
                  std::optional<JobId> running, TimePoint now) override;

 private:
  RrConfig cfg_;
  std::deque<JobId> fifo_;
};

}  // namespace schedsim
