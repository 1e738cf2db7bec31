#include "schedsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>

#include "schedsim/event.hpp"

namespace schedsim {

namespace {

// One in-flight run. The running job's `remaining` is updated lazily: it is
// authoritative as of `synced_at`, and every event handler syncs it to the
// event time before any policy callback, so policies always see current
// numbers.
class Sim {
 public:
  Sim(const Workload& w, Policy& policy, const SimConfig& cfg)
      : policy_(policy), cfg_(cfg) {
    auto violations = validate_workload(w);
    if (!violations.empty()) {
      std::ostringstream msg;
      msg << "invalid workload '" << w.name << "':";
      for (const Violation& v : violations) msg << " [task " << v.id << ": " << v.rule << "]";
      throw ValidationError(msg.str());
    }
    abort_on_miss_ = cfg.abort_on_miss.value_or(policy.aborts_on_miss());

    jobs_.resize(w.tasks.size());
    for (const TaskSpec& t : w.tasks) jobs_[t.id] = make_job(t);
    for (const TaskSpec& t : w.tasks) queue_.push(t.arrival, EventKind::Arrival, t.id);
    if (abort_on_miss_) {
      // Deadline re-checks; stale by the time they fire unless the job is
      // still live, in which case it can no longer finish in time.
      for (const TaskSpec& t : w.tasks) queue_.push(t.deadline, EventKind::Reconfigure, t.id);
    }
    trace_.workload = w.name;
    trace_.policy = policy.name();
  }

  RunResult go() {
    bool horizon_hit = false;
    while (!queue_.empty()) {
      Event e = queue_.pop();
      if (cfg_.horizon && e.time > *cfg_.horizon) {
        horizon_hit = true;
        break;
      }
      if (stale(e)) continue;
      now_ = e.time;
      sync_to(now_);
      bool decision_point = true;
      switch (e.kind) {
        case EventKind::Arrival: handle_arrival(e.job); break;
        case EventKind::Completion: handle_completion(e.job); break;
        case EventKind::QuantumExpiry: handle_expiry(e.job); break;
        case EventKind::Reconfigure: handle_deadline_abort(e.job); break;
        case EventKind::LatencyElapsed:
          handle_latency_elapsed();
          decision_point = false;
          break;
      }
      if (decision_point) scheduling_point();
      if (terminal_ == jobs_.size()) break;
    }

    RunStatus status = RunStatus::Complete;
    if (horizon_hit) {
      now_ = *cfg_.horizon;
      sync_to(now_);
      if (running_) close_segment(now_);
      if (pending_) cancel_pending(now_);
      bool swept = false;
      for (JobState& j : jobs_) {
        if (j.state == RunState::Completed || j.state == RunState::Aborted) continue;
        j.state = RunState::Aborted;
        ++terminal_;
        swept = true;
      }
      if (swept) status = RunStatus::HorizonExceeded;
    } else if (terminal_ != jobs_.size()) {
      throw PolicyContractViolation("policy idled with live jobs and no future events");
    }

    trace_.makespan = now_;
    TimeDelta accounted = trace_.busy() + trace_.latency;
    if (accounted.count() > trace_.makespan.ticks())
      throw std::logic_error("trace accounting exceeds makespan");
    trace_.idle = TimeDelta{trace_.makespan.ticks()} - accounted;
    assert(trace_.conservation_holds());
    return RunResult{std::move(trace_), std::move(jobs_), status};
  }

 private:
  struct Running {
    JobId job;
    TimePoint seg_start;
    TimePoint synced_at;
    TimePoint armed_end;
    std::uint64_t token;
  };
  struct Pending {
    JobId job;
    TimePoint window_start;
    TimePoint window_end;
    std::optional<TimeDelta> grant;
    std::uint64_t token;
  };

  bool stale(const Event& e) const {
    switch (e.kind) {
      case EventKind::Completion:
      case EventKind::QuantumExpiry:
        return !running_ || running_->job != e.job || running_->token != e.token;
      case EventKind::LatencyElapsed:
        return !pending_ || pending_->token != e.token;
      case EventKind::Reconfigure: {
        RunState s = jobs_[e.job].state;
        return s != RunState::Ready && s != RunState::Running;
      }
      case EventKind::Arrival:
        return false;
    }
    return false;
  }

  void sync_to(TimePoint t) {
    if (!running_) return;
    jobs_[running_->job].remaining -= t - running_->synced_at;
    running_->synced_at = t;
  }

  TimeDelta close_segment(TimePoint at) {
    sync_to(at);
    Running r = *running_;
    running_.reset();
    TimeDelta ran = at - r.seg_start;
    if (ran.count() > 0) {
      trace_.add_segment(r.job, r.seg_start, at);
      if (!jobs_[r.job].first_dispatch) jobs_[r.job].first_dispatch = r.seg_start;
    }
    return ran;
  }

  void start_segment(JobId j, TimePoint at, std::optional<TimeDelta> grant) {
    policy_.on_dispatch(jobs_, j, at);
    ready_remove(j);
    JobState& js = jobs_[j];
    js.state = RunState::Running;
    assert(js.remaining.count() > 0);
    TimeDelta run = grant ? std::min(*grant, js.remaining) : js.remaining;
    TimePoint end = at + run;
    EventKind k = run == js.remaining ? EventKind::Completion : EventKind::QuantumExpiry;
    std::uint64_t token = ++token_counter_;
    queue_.push(end, k, j, token);
    running_ = Running{j, at, at, end, token};
    last_seg_job_ = j;
  }

  void cancel_pending(TimePoint at) {
    trace_.latency += at - pending_->window_start;
    pending_.reset();
  }

  void handle_arrival(JobId j) {
    JobState& js = jobs_[j];
    js.state = RunState::Ready;
    js.last_enqueue = now_;
    trace_.add_event(now_, EventKind::Arrival, j, js.level);
    if (policy_.on_arrival(jobs_, j, now_) == Admission::Rejected) {
      js.state = RunState::Aborted;
      ++terminal_;
    } else {
      ready_insert(j);
    }
  }

  void handle_completion(JobId j) {
    close_segment(now_);
    JobState& js = jobs_[j];
    assert(js.remaining.count() == 0);
    js.state = RunState::Completed;
    js.completion = now_;
    ++terminal_;
    trace_.add_event(now_, EventKind::Completion, j, js.level);
    policy_.on_completion(jobs_, j, now_);
  }

  void handle_expiry(JobId j) {
    TimeDelta ran = close_segment(now_);
    JobState& js = jobs_[j];
    js.state = RunState::Ready;
    js.last_enqueue = now_;
    ready_insert(j);
    trace_.add_event(now_, EventKind::QuantumExpiry, j, js.level);
    policy_.on_quantum_expiry(jobs_, j, now_, ran);
  }

  // Effective abort_on_miss: the job is live at its deadline, so it cannot
  // finish in time any more; kill it at this exact instant.
  void handle_deadline_abort(JobId j) {
    if (running_ && running_->job == j) close_segment(now_);
    if (pending_ && pending_->job == j) cancel_pending(now_);
    ready_remove(j);
    JobState& js = jobs_[j];
    js.state = RunState::Aborted;
    ++terminal_;
    trace_.add_event(now_, EventKind::Reconfigure, j, js.level);
    policy_.on_abort(jobs_, j, now_);
  }

  void handle_latency_elapsed() {
    Pending p = *pending_;
    pending_.reset();
    trace_.latency += p.window_end - p.window_start;
    assert(jobs_[p.job].state == RunState::Ready);
    trace_.add_event(now_, EventKind::LatencyElapsed, p.job, jobs_[p.job].level);
    start_segment(p.job, now_, p.grant);
  }

  void scheduling_point() {
    std::optional<JobId> running_id = running_ ? std::optional(running_->job) : std::nullopt;
    Decision d = policy_.select(jobs_, ready_, running_id, now_);
    check_decision(d, running_id);

    for (JobId a : d.aborts) {
      if (running_ && running_->job == a) close_segment(now_);
      if (pending_ && pending_->job == a) cancel_pending(now_);
      ready_remove(a);
      jobs_[a].state = RunState::Aborted;
      ++terminal_;
    }

    if (!d.job) {
      if (pending_) cancel_pending(now_);
      return;
    }

    if (pending_) {
      if (pending_->job == *d.job) {
        pending_->grant = d.quantum;
        return;
      }
      cancel_pending(now_);
    }

    if (running_ && running_->job == *d.job) {
      // Same job keeps going; the policy may still tighten its budget.
      if (d.quantum) {
        TimePoint cap_end = now_ + *d.quantum;
        if (cap_end < running_->armed_end) {
          running_->token = ++token_counter_;
          running_->armed_end = cap_end;
          queue_.push(cap_end, EventKind::QuantumExpiry, *d.job, running_->token);
        }
      }
      return;
    }

    if (running_) {
      JobId prev = running_->job;
      TimeDelta ran = close_segment(now_);
      JobState& ps = jobs_[prev];
      ps.state = RunState::Ready;
      ps.last_enqueue = now_;
      ready_insert(prev);
      policy_.on_preempt(jobs_, prev, now_, ran);
    }

    TimeDelta switch_cost = cfg_.dispatch_latency + cfg_.context_switch_cost;
    bool resuming = last_seg_job_ && *last_seg_job_ == *d.job;
    if (switch_cost.count() == 0 || resuming) {
      start_segment(*d.job, now_, d.quantum);
    } else {
      std::uint64_t token = ++token_counter_;
      pending_ = Pending{*d.job, now_, now_ + switch_cost, d.quantum, token};
      queue_.push(now_ + switch_cost, EventKind::LatencyElapsed, *d.job, token);
    }
  }

  void check_decision(const Decision& d, std::optional<JobId> running_id) const {
    auto eligible = [&](JobId j) {
      return (running_id && *running_id == j) || is_ready(j);
    };
    for (JobId a : d.aborts) {
      if (!eligible(a)) throw PolicyContractViolation("abort of a job that is not ready");
      if (d.job && *d.job == a)
        throw PolicyContractViolation("selected job is also listed for abort");
    }
    for (std::size_t i = 0; i < d.aborts.size(); ++i)
      for (std::size_t k = i + 1; k < d.aborts.size(); ++k)
        if (d.aborts[i] == d.aborts[k])
          throw PolicyContractViolation("duplicate job in abort list");
    if (d.job && !eligible(*d.job))
      throw PolicyContractViolation("selected job is not in the ready set");
    if (!d.job && running_id &&
        std::find(d.aborts.begin(), d.aborts.end(), *running_id) == d.aborts.end())
      throw PolicyContractViolation("policy dropped the running job without aborting it");
    if (d.quantum && d.quantum->count() == 0)
      throw PolicyContractViolation("zero-length quantum");
  }

  void ready_insert(JobId j) {
    auto it = std::lower_bound(ready_.begin(), ready_.end(), j);
    assert(it == ready_.end() || *it != j);
    ready_.insert(it, j);
  }
  void ready_remove(JobId j) {
    auto it = std::lower_bound(ready_.begin(), ready_.end(), j);
    if (it != ready_.end() && *it == j) ready_.erase(it);
  }
  bool is_ready(JobId j) const {
    return std::binary_search(ready_.begin(), ready_.end(), j);
  }

  Policy& policy_;
  const SimConfig& cfg_;
  bool abort_on_miss_ = false;
  std::vector<JobState> jobs_;
  EventQueue queue_;
  Trace trace_;
  TimePoint now_{};
  std::vector<JobId> ready_;
  std::optional<Running> running_;
  std::optional<Pending> pending_;
  std::optional<JobId> last_seg_job_;
  std::uint64_t token_counter_ = 0;
  std::size_t terminal_ = 0;
};

}  // namespace

RunResult run(const Workload& w, Policy& policy, const SimConfig& cfg) {
  return Sim(w, policy, cfg).go();
}

}  // namespace schedsim
