#include "schedsim/policies/nmlfq.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>

#include "schedsim/policies/classic.hpp"

namespace schedsim {

int level_count_for(std::size_t n_live, const NmlfqConfig& cfg) {
  // bit_width(n) == ceil(log2(n + 1)).
  int raw = static_cast<int>(std::bit_width(n_live));
  return std::clamp(raw, cfg.min_levels, cfg.max_levels);
}

std::vector<TimeDelta> quanta_for(int levels, const NmlfqConfig& cfg) {
  std::vector<TimeDelta> q;
  q.reserve(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k)
    q.push_back(cfg.base_quantum * (static_cast<ticks_t>(1) << k));
  return q;
}

AdmissionDecision planning_admit(std::vector<DemandEntry> live, DemandEntry candidate,
                                 TimePoint now) {
  live.push_back(candidate);
  std::stable_sort(live.begin(), live.end(), [](const DemandEntry& a, const DemandEntry& b) {
    return a.deadline < b.deadline;
  });
  TimeDelta cum{};
  for (const DemandEntry& e : live) {
    cum += e.remaining;
    if (now + cum > e.deadline) {
      signed_ticks_t avail = static_cast<signed_ticks_t>(e.deadline.ticks()) -
                             static_cast<signed_ticks_t>(now.ticks());
      std::ostringstream reason;
      reason << "demand " << cum.count() << " exceeds the " << avail
             << " ticks available before deadline " << e.deadline.ticks();
      return {Admission::Rejected, reason.str()};
    }
  }
  return {Admission::Accepted, {}};
}

ReadyTable::ReadyTable(int levels) { levels_.resize(static_cast<std::size_t>(std::max(levels, 1))); }

int ReadyTable::level_of(JobId j) const {
  auto it = index_.find(j);
  if (it == index_.end()) throw StaleIndex("job not in ready table");
  return it->second;
}

bool ReadyTable::entry_before(const Entry& a, const Entry& b) const {
  if (a.deadline != b.deadline) return a.deadline < b.deadline;
  if (a.arrival != b.arrival) return a.arrival < b.arrival;
  return a.id < b.id;
}

void ReadyTable::place(JobState& j, int level, bool at_front, TimePoint now) {
  Entry e{j.spec.id, j.spec.deadline, j.spec.arrival};
  auto& q = levels_[static_cast<std::size_t>(level)];
  if (level == 0) {
    // The top level ignores FIFO position; it stays deadline-ordered.
    auto pos = std::lower_bound(q.begin(), q.end(), e,
                                [this](const Entry& a, const Entry& b) { return entry_before(a, b); });
    q.insert(pos, e);
  } else if (at_front) {
    q.push_front(e);
  } else {
    q.push_back(e);
  }
  index_[e.id] = level;
  j.level = level;
  j.last_enqueue = now;
}

void ReadyTable::insert(JobState& j, TimePoint now) {
  if (contains(j.spec.id)) throw DuplicateJob("job already in ready table");
  place(j, 0, false, now);
}

void ReadyTable::move_to_front(JobState& j, TimePoint now) {
  if (contains(j.spec.id)) {
    int lv = level_of(j.spec.id);
    if (lv == 0) return;
    erase(j.spec.id);
  }
  place(j, 0, false, now);
}

void ReadyTable::promote_one(JobState& j, TimePoint now) {
  int lv = level_of(j.spec.id);
  if (lv == 0) return;
  erase(j.spec.id);
  place(j, lv - 1, false, now);
}

void ReadyTable::enqueue_tail(JobState& j, int level, TimePoint now) {
  if (contains(j.spec.id)) throw DuplicateJob("job already in ready table");
  place(j, level, false, now);
}

void ReadyTable::enqueue_front(JobState& j, int level, TimePoint now) {
  if (contains(j.spec.id)) throw DuplicateJob("job already in ready table");
  place(j, level, true, now);
}

JobId ReadyTable::remove_last(JobId expected) {
  if (empty()) throw EmptyTable("ready table is empty");
  for (auto lv = levels_.size(); lv-- > 0;) {
    auto& q = levels_[lv];
    if (q.empty()) continue;
    if (q.back().id != expected) throw StaleIndex("tail job changed under the caller");
    JobId id = q.back().id;
    q.pop_back();
    index_.erase(id);
    return id;
  }
  throw EmptyTable("ready table is empty");
}

void ReadyTable::erase(JobId j) {
  auto it = index_.find(j);
  if (it == index_.end()) return;
  auto& q = levels_[static_cast<std::size_t>(it->second)];
  auto pos = std::find_if(q.begin(), q.end(), [&](const Entry& e) { return e.id == j; });
  assert(pos != q.end());
  q.erase(pos);
  index_.erase(it);
}

std::optional<int> ReadyTable::top_level() const {
  for (std::size_t lv = 0; lv < levels_.size(); ++lv)
    if (!levels_[lv].empty()) return static_cast<int>(lv);
  return std::nullopt;
}

JobId ReadyTable::head(int level) const {
  const auto& q = levels_[static_cast<std::size_t>(level)];
  if (q.empty()) throw EmptyTable("level has no jobs");
  return q.front().id;
}

std::vector<JobId> ReadyTable::set_level_count(int count, std::vector<JobState>& jobs) {
  std::vector<JobId> moved;
  int old = level_count();
  if (count == old) return moved;
  if (count > old) {
    levels_.resize(static_cast<std::size_t>(count));
    return moved;
  }
  int target = count - 1;
  auto& dst = levels_[static_cast<std::size_t>(target)];
  for (int lv = count; lv < old; ++lv) {
    for (const Entry& e : levels_[static_cast<std::size_t>(lv)]) {
      if (target == 0) {
        auto pos = std::lower_bound(dst.begin(), dst.end(), e,
                                    [this](const Entry& a, const Entry& b) { return entry_before(a, b); });
        dst.insert(pos, e);
      } else {
        dst.push_back(e);
      }
      index_[e.id] = target;
      jobs[e.id].level = target;
      moved.push_back(e.id);
    }
  }
  levels_.resize(static_cast<std::size_t>(count));
  return moved;
}

std::vector<JobId> ReadyTable::snapshot() const {
  std::vector<JobId> out;
  out.reserve(index_.size());
  for (const auto& q : levels_)
    for (const Entry& e : q) out.push_back(e.id);
  return out;
}

bool ReadyTable::integrity(const std::vector<JobState>& jobs) const {
  std::size_t total = 0;
  for (std::size_t lv = 0; lv < levels_.size(); ++lv) {
    const auto& q = levels_[lv];
    total += q.size();
    for (std::size_t i = 0; i < q.size(); ++i) {
      const Entry& e = q[i];
      auto it = index_.find(e.id);
      if (it == index_.end() || it->second != static_cast<int>(lv)) return false;
      if (e.id >= jobs.size()) return false;
      const JobState& js = jobs[e.id];
      if (js.state != RunState::Ready) return false;
      if (js.level != static_cast<int>(lv)) return false;
      if (js.spec.deadline != e.deadline || js.spec.arrival != e.arrival) return false;
      if (lv == 0 && i + 1 < q.size() && entry_before(q[i + 1], e)) return false;
    }
  }
  return total == index_.size();
}

NmlfqPolicy::NmlfqPolicy(NmlfqConfig cfg)
    : cfg_(cfg),
      table_(level_count_for(0, cfg)),
      quanta_(quanta_for(level_count_for(0, cfg), cfg)) {}

TimeDelta NmlfqPolicy::aging_threshold() const {
  if (cfg_.aging_threshold) return *cfg_.aging_threshold;
  return cfg_.base_quantum * static_cast<ticks_t>(10 * table_.level_count());
}

ticks_t& NmlfqPolicy::used(JobId j) {
  if (used_.size() <= j) used_.resize(static_cast<std::size_t>(j) + 1, 0);
  return used_[j];
}

namespace {

bool live(const JobState& s) {
  return s.state == RunState::Ready || s.state == RunState::Running;
}

std::size_t live_count(const std::vector<JobState>& jobs) {
  return static_cast<std::size_t>(std::count_if(jobs.begin(), jobs.end(),
                                                [](const JobState& s) { return live(s); }));
}

}  // namespace

void NmlfqPolicy::reconfigure(std::size_t n_live, std::vector<JobState>& jobs) {
  int levels = level_count_for(n_live, cfg_);
  if (levels == table_.level_count()) return;
  for (JobId m : table_.set_level_count(levels, jobs)) used(m) = 0;
  quanta_ = quanta_for(levels, cfg_);
}

Admission NmlfqPolicy::on_arrival(std::vector<JobState>& jobs, JobId j, TimePoint now) {
  JobState& js = jobs[j];
  if (cfg_.admission == AdmissionMode::Planning) {
    std::vector<DemandEntry> others;
    for (const JobState& s : jobs)
      if (s.spec.id != j && live(s)) others.push_back({s.remaining, s.spec.deadline});
    AdmissionDecision d = planning_admit(std::move(others), {js.remaining, js.spec.deadline}, now);
    if (d.verdict == Admission::Rejected) return Admission::Rejected;
  }
  reconfigure(live_count(jobs), jobs);
  table_.insert(js, now);
  used(j) = 0;
  return Admission::Accepted;
}

void NmlfqPolicy::on_completion(std::vector<JobState>& jobs, JobId, TimePoint) {
  reconfigure(live_count(jobs), jobs);
}

void NmlfqPolicy::on_quantum_expiry(std::vector<JobState>& jobs, JobId j, TimePoint now,
                                    TimeDelta ran) {
  JobState& js = jobs[j];
  ticks_t& u = used(j);
  u += ran.count();
  int lv = std::min(js.level, table_.level_count() - 1);
  if (u >= quanta_[static_cast<std::size_t>(lv)].count()) {
    // Whole budget consumed at this level, possibly across several slices.
    u = 0;
    table_.enqueue_tail(js, std::min(lv + 1, table_.level_count() - 1), now);
  } else {
    // Budget-capped early stop; keep the remaining allowance and the spot.
    table_.enqueue_front(js, lv, now);
  }
}

void NmlfqPolicy::on_preempt(std::vector<JobState>& jobs, JobId j, TimePoint now, TimeDelta ran) {
  JobState& js = jobs[j];
  used(j) += ran.count();
  table_.enqueue_front(js, std::min(js.level, table_.level_count() - 1), now);
}

void NmlfqPolicy::on_dispatch(std::vector<JobState>&, JobId j, TimePoint) {
  assert(table_.contains(j));
  table_.erase(j);
}

void NmlfqPolicy::on_abort(std::vector<JobState>&, JobId j, TimePoint) {
  table_.erase(j);
  used(j) = 0;
}

void NmlfqPolicy::apply_promotions(std::vector<JobState>& jobs, TimePoint now) {
  // Urgency first: anything whose slack fell under the threshold jumps to
  // the deadline-ordered top level.
  for (JobId j : table_.snapshot()) {
    JobState& js = jobs[j];
    if (js.level == 0) continue;
    Rat threshold = cfg_.urgency_factor * rat(js.remaining);
    if (Rat(slack(js, now)) < threshold) {
      table_.move_to_front(js, now);
      used(j) = 0;
    }
  }
  // Then aging: one level up per decision point after waiting long enough.
  TimeDelta threshold = aging_threshold();
  for (JobId j : table_.snapshot()) {
    JobState& js = jobs[j];
    if (js.level == 0) continue;
    if (now - js.last_enqueue >= threshold) {
      table_.promote_one(js, now);
      used(j) = 0;
    }
  }
}

Decision NmlfqPolicy::select(std::vector<JobState>& jobs, const std::vector<JobId>& ready,
                             std::optional<JobId> running, TimePoint now) {
  apply_promotions(jobs, now);

  std::optional<JobId> cand;
  int cand_level = 0;
  bool keep_running = false;
  if (auto top = table_.top_level()) {
    cand = table_.head(*top);
    cand_level = *top;
  }
  if (running) {
    int run_level = std::min(jobs[*running].level, table_.level_count() - 1);
    // Preemption only by a strictly higher level.
    if (!cand || cand_level >= run_level) {
      cand = running;
      cand_level = run_level;
      keep_running = true;
    }
  }
  if (!cand) return {};

  Decision d;
  d.job = cand;

  if (cfg_.admission == AdmissionMode::Planning) {
    // Dispatch guard: running the candidate burns slack of every admitted
    // job due before it. The tightest such prefix bounds the slice; when a
    // prefix has no slack at all, only the nearest-deadline job may run.
    std::vector<DemandEntry> earlier;
    TimePoint cand_deadline = jobs[*cand].spec.deadline;
    auto add_live = [&](JobId j) {
      if (jobs[j].spec.deadline < cand_deadline)
        earlier.push_back({jobs[j].remaining, jobs[j].spec.deadline});
    };
    for (JobId j : ready) add_live(j);
    if (running) add_live(*running);
    std::optional<signed_ticks_t> margin;
    if (!earlier.empty()) {
      std::stable_sort(earlier.begin(), earlier.end(),
                       [](const DemandEntry& a, const DemandEntry& b) {
                         return a.deadline < b.deadline;
                       });
      ticks_t cum = 0;
      for (std::size_t i = 0; i < earlier.size(); ++i) {
        cum += earlier[i].remaining.count();
        if (i + 1 < earlier.size() && earlier[i + 1].deadline == earlier[i].deadline) continue;
        signed_ticks_t m = static_cast<signed_ticks_t>(earlier[i].deadline.ticks()) -
                           static_cast<signed_ticks_t>(now.ticks()) -
                           static_cast<signed_ticks_t>(cum);
        if (!margin || m < *margin) margin = m;
      }
    }
    if (margin && *margin <= 0) {
      // No slack before the candidate's deadline; fall back to plain
      // nearest-deadline order, uncapped (it consumes no one else's slack).
      std::vector<JobId> all = ready;
      if (running) all.push_back(*running);
      d.job = edf_select(jobs, all);
      d.quantum.reset();
      return d;
    }
    if (keep_running) {
      // The engine only ever tightens the armed slice, so handing it the
      // margin is safe whether or not it is smaller than what is left.
      if (margin) d.quantum = TimeDelta{static_cast<ticks_t>(*margin)};
      return d;
    }
    ticks_t budget = quanta_[static_cast<std::size_t>(cand_level)].count() - used(*cand);
    if (margin) budget = std::min(budget, static_cast<ticks_t>(*margin));
    d.quantum = TimeDelta{budget};
    return d;
  }

  if (!keep_running) {
    ticks_t budget = quanta_[static_cast<std::size_t>(cand_level)].count() - used(*cand);
    d.quantum = TimeDelta{budget};
  }
  return d;
}

}  // namespace schedsim
