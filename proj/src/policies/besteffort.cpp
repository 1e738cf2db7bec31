#include "schedsim/policies/besteffort.hpp"

#include <algorithm>

namespace schedsim {

namespace {

bool entry_deadline_before(const PvdEntry& a, const PvdEntry& b) {
  if (a.deadline != b.deadline) return a.deadline < b.deadline;
  if (a.arrival != b.arrival) return a.arrival < b.arrival;
  return a.job < b.job;
}

bool schedule_fits(const std::vector<PvdEntry>& deadline_ordered, TimePoint now) {
  std::vector<DemandEntry> demand;
  demand.reserve(deadline_ordered.size());
  for (const PvdEntry& e : deadline_ordered) demand.push_back({e.remaining, e.deadline});
  return feasible_sorted(demand, now);
}

// Splits candidates into live entries and past-deadline aborts.
std::vector<PvdEntry> collect(const std::vector<JobState>& jobs,
                              const std::vector<JobId>& candidates, TimePoint now,
                              std::vector<JobId>& aborts) {
  std::vector<PvdEntry> entries;
  entries.reserve(candidates.size());
  for (JobId j : candidates) {
    const JobState& s = jobs[j];
    if (s.spec.deadline <= now) {
      aborts.push_back(j);
      continue;
    }
    entries.push_back({j, s.spec.value, s.remaining, s.spec.deadline, s.spec.arrival});
  }
  return entries;
}

// The CPU never idles over live candidates: when nothing fits, run the
// earliest-deadline one anyway.
std::optional<JobId> edf_fallback(const std::vector<PvdEntry>& entries) {
  const PvdEntry* best = nullptr;
  for (const PvdEntry& e : entries)
    if (!best || entry_deadline_before(e, *best)) best = &e;
  return best ? std::optional(best->job) : std::nullopt;
}

Decision to_decision(BestEffortChoice c) {
  Decision d;
  d.job = c.job;
  d.aborts = std::move(c.aborts);
  return d;
}

}  // namespace

bool pvd_greater(const PvdEntry& a, const PvdEntry& b) {
  // Cross-multiplied density compare; remaining > 0 for live entries, so the
  // sign never flips. Scaling every value by the same factor changes nothing.
  Rat lhs = a.value * rat(b.remaining);
  Rat rhs = b.value * rat(a.remaining);
  if (lhs != rhs) return lhs > rhs;
  if (a.deadline != b.deadline) return a.deadline < b.deadline;
  return a.job < b.job;
}

BestEffortChoice dasa_select(const std::vector<JobState>& jobs,
                             const std::vector<JobId>& candidates, TimePoint now) {
  BestEffortChoice out;
  std::vector<PvdEntry> entries = collect(jobs, candidates, now, out.aborts);
  std::sort(entries.begin(), entries.end(), pvd_greater);

  std::vector<PvdEntry> sched;
  for (const PvdEntry& e : entries) {
    auto pos = std::lower_bound(sched.begin(), sched.end(), e, entry_deadline_before);
    pos = sched.insert(pos, e);
    if (!schedule_fits(sched, now)) sched.erase(pos);
  }

  for (const PvdEntry& e : sched) out.schedule.push_back(e.job);
  out.job = sched.empty() ? edf_fallback(entries) : std::optional(sched.front().job);
  return out;
}

BestEffortChoice lbesa_select(const std::vector<JobState>& jobs,
                              const std::vector<JobId>& candidates, TimePoint now) {
  BestEffortChoice out;
  std::vector<PvdEntry> entries = collect(jobs, candidates, now, out.aborts);

  std::vector<PvdEntry> sched = entries;
  std::sort(sched.begin(), sched.end(), entry_deadline_before);
  // Shed order: lowest density first; ties drop the later deadline, then the
  // higher id. Shed jobs are not aborted; they compete again next time.
  auto shed_before = [](const PvdEntry& a, const PvdEntry& b) {
    Rat lhs = a.value * rat(b.remaining);
    Rat rhs = b.value * rat(a.remaining);
    if (lhs != rhs) return lhs < rhs;
    if (a.deadline != b.deadline) return a.deadline > b.deadline;
    return a.job > b.job;
  };
  while (!sched.empty() && !schedule_fits(sched, now)) {
    sched.erase(std::min_element(sched.begin(), sched.end(), shed_before));
  }

  for (const PvdEntry& e : sched) out.schedule.push_back(e.job);
  out.job = sched.empty() ? edf_fallback(entries) : std::optional(sched.front().job);
  return out;
}

Decision DasaPolicy::select(std::vector<JobState>& jobs, const std::vector<JobId>& ready,
                            std::optional<JobId> running, TimePoint now) {
  std::vector<JobId> candidates = ready;
  if (running) candidates.push_back(*running);
  if (candidates.empty()) return {};
  return to_decision(dasa_select(jobs, candidates, now));
}

Decision LbesaPolicy::select(std::vector<JobState>& jobs, const std::vector<JobId>& ready,
                             std::optional<JobId> running, TimePoint now) {
  std::vector<JobId> candidates = ready;
  if (running) candidates.push_back(*running);
  if (candidates.empty()) return {};
  return to_decision(lbesa_select(jobs, candidates, now));
}

}  // namespace schedsim
