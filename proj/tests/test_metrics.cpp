#include <doctest.h>

#include <string>
#include <vector>

#include "schedsim/engine.hpp"
#include "schedsim/metrics.hpp"
#include "schedsim/policies/classic.hpp"
#include "fixtures.hpp"

using namespace schedsim;
using fixtures::make_workload;

namespace {

// Hand-built report with just enough filled in for compare() to pool.
MetricsReport report(std::string workload, std::string policy, ticks_t response_sum,
                     std::size_t dispatched) {
  MetricsReport r;
  r.workload = std::move(workload);
  r.policy = std::move(policy);
  r.jobs = dispatched;
  r.dispatched = dispatched;
  r.completed = dispatched;
  r.response_sum = response_sum;
  r.avg_response = dispatched == 0 ? Rat(0) : Rat(response_sum) / Rat(dispatched);
  r.busy_ticks = response_sum;
  r.makespan_ticks = response_sum;
  if (r.makespan_ticks != 0) r.cpu_utilization = 1;
  return r;
}

}  // namespace

TEST_CASE("a single job behind dispatch latency pays for it in every figure") {
  Workload w = make_workload("fig1", {{0, 3000, 3000}});
  FcfsPolicy fcfs;
  SimConfig cfg;
  cfg.dispatch_latency = ticks(1000);
  RunResult res = run(w, fcfs, cfg);
  MetricsReport m = compute(res.trace, res.jobs);

  REQUIRE(m.per_job.size() == 1);
  CHECK(m.per_job[0].response == ticks(1000));
  CHECK(m.per_job[0].turnaround == ticks(4000));
  CHECK(m.per_job[0].waiting == ticks(1000));
  CHECK(!m.per_job[0].met_deadline);
  CHECK(m.per_job[0].value_accrued == 0);
  CHECK(m.misses == 1);
  CHECK(m.miss_ratio == 1);
  CHECK(m.cpu_utilization == Rat(3, 4));
  CHECK(m.avg_response == 1000);
  CHECK(m.avg_turnaround == 4000);
  CHECK(m.avg_waiting == 1000);
  CHECK(m.total_value == 0);
  CHECK(m.overall_turnaround == ticks(4000));

  SUBCASE("and with the latency removed the deadline is met") {
    RunResult clean = run(w, fcfs);
    MetricsReport m0 = compute(clean.trace, clean.jobs);
    CHECK(m0.per_job[0].response == ticks(0));
    CHECK(m0.per_job[0].turnaround == ticks(3000));
    CHECK(m0.per_job[0].waiting == ticks(0));
    CHECK(m0.per_job[0].met_deadline);
    CHECK(m0.misses == 0);
    CHECK(m0.cpu_utilization == 1);
  }
}

TEST_CASE("round robin pair: response, waiting and value per job") {
  Workload w = make_workload("rrpair", {{0, 2500, 10000}, {0, 2500, 10000}});
  RrPolicy rr{RrConfig{ticks(1000)}};
  RunResult res = run(w, rr);
  MetricsReport m = compute(res.trace, res.jobs);

  REQUIRE(m.per_job.size() == 2);
  CHECK(m.per_job[0].response == ticks(0));
  CHECK(m.per_job[0].turnaround == ticks(4500));
  CHECK(m.per_job[0].waiting == ticks(2000));
  CHECK(m.per_job[0].met_deadline);
  CHECK(m.per_job[0].value_accrued == 1);
  CHECK(m.per_job[1].response == ticks(1000));
  CHECK(m.per_job[1].turnaround == ticks(5000));
  CHECK(m.per_job[1].waiting == ticks(2500));
  CHECK(m.per_job[1].met_deadline);

  CHECK(m.jobs == 2);
  CHECK(m.dispatched == 2);
  CHECK(m.completed == 2);
  CHECK(m.misses == 0);
  CHECK(m.avg_response == 500);
  CHECK(m.avg_turnaround == 4750);
  CHECK(m.avg_waiting == 2250);
  CHECK(m.cpu_utilization == 1);
  CHECK(m.total_value == 2);
  CHECK(m.overall_turnaround == ticks(5000));
}

TEST_CASE("deadline-ordered pair: the delayed job carries the waiting") {
  Workload w = make_workload("edfpair", {{0, 2000, 8000}, {0, 2000, 4000}});
  EdfPolicy edf;
  RunResult res = run(w, edf);
  MetricsReport m = compute(res.trace, res.jobs);

  CHECK(m.per_job[0].response == ticks(2000));
  CHECK(m.per_job[0].turnaround == ticks(4000));
  CHECK(m.per_job[0].waiting == ticks(2000));
  CHECK(m.per_job[1].response == ticks(0));
  CHECK(m.per_job[1].turnaround == ticks(2000));
  CHECK(m.per_job[1].waiting == ticks(0));
  CHECK(m.avg_response == 1000);
  CHECK(m.avg_turnaround == 3000);
  CHECK(m.avg_waiting == 1000);
  CHECK(m.total_value == 2);
}

TEST_CASE("a job that never ran counts as a miss but not as dispatched") {
  Workload w = make_workload("mix", {{0, 1000, 5000}});
  auto jobs = std::vector<JobState>{make_job(w.tasks[0]), make_job({1, at_tick(0), ticks(1),
                                                                    at_tick(1), Rat(3)})};
  jobs[0].state = RunState::Completed;
  jobs[0].first_dispatch = at_tick(0);
  jobs[0].completion = at_tick(1000);
  jobs[0].remaining = ticks(0);
  jobs[1].state = RunState::Aborted;

  Trace t;
  t.workload = "mix";
  t.policy = "edf";
  t.makespan = at_tick(1000);
  t.add_segment(0, at_tick(0), at_tick(1000));
  MetricsReport m = compute(t, jobs);

  CHECK(m.jobs == 2);
  CHECK(m.dispatched == 1);
  CHECK(m.completed == 1);
  CHECK(m.misses == 1);
  CHECK(m.miss_ratio == Rat(1, 2));
  CHECK(!m.per_job[1].response.has_value());
  CHECK(!m.per_job[1].turnaround.has_value());
  CHECK(m.per_job[1].value_accrued == 0);
  CHECK(m.total_value == 1);

  SUBCASE("and its csv row leaves the unmeasured columns empty") {
    std::string csv = metrics_csv(m);
    CHECK(csv.find("1,,,,0,0\n") != std::string::npos);
  }
}

TEST_CASE("metrics refuse a run that is still in flight") {
  Workload w = make_workload("live", {{0, 1000, 5000}});
  auto jobs = std::vector<JobState>{make_job(w.tasks[0])};
  Trace t;
  CHECK_THROWS_WITH_AS(compute(t, jobs), "job 0 is still live; metrics need a finished run",
                       IncompleteTrace);
}

TEST_CASE("metrics csv golden output") {
  Workload w = make_workload("fig1", {{0, 3000, 3000}});
  FcfsPolicy fcfs;
  SimConfig cfg;
  cfg.dispatch_latency = ticks(1000);
  RunResult res = run(w, fcfs, cfg);
  std::string csv = metrics_csv(compute(res.trace, res.jobs));
  CHECK(csv ==
        "# schedsim metrics v1\n"
        "# workload: fig1\n"
        "# policy: fcfs\n"
        "id,response,turnaround,waiting,met_deadline,value_accrued\n"
        "0,1000,4000,1000,0,0\n"
        "#summary\n"
        "jobs,1\n"
        "dispatched,1\n"
        "completed,1\n"
        "misses,1\n"
        "miss_ratio,1\n"
        "cpu_utilization,0.75\n"
        "avg_response,1000\n"
        "avg_turnaround,4000\n"
        "avg_waiting,1000\n"
        "total_value,0\n"
        "overall_turnaround,4000\n"
        "makespan,4000\n"
        "busy,3000\n");
}

TEST_CASE("comparison rows come out workload-major with pooled aggregates") {
  // Pooling weights by dispatch count: naive averaging of the two nmlfq rows
  // would give 1250, the pooled figure is 1000.
  std::vector<MetricsReport> reports{
      report("w1", "nmlfq", 1000, 2),
      report("w1", "dasa", 2000, 2),
      report("w2", "nmlfq", 2000, 1),
      report("w2", "dasa", 2000, 1),
  };
  ComparisonTable t = compare(reports);

  REQUIRE(t.rows.size() == 6);
  CHECK(t.rows[0].workload == "w1");
  CHECK(t.rows[0].policy == "nmlfq");
  CHECK(t.rows[1].policy == "dasa");
  CHECK(t.rows[2].workload == "w2");
  CHECK(t.rows[4].workload == "aggregate");
  CHECK(t.rows[4].policy == "nmlfq");
  CHECK(t.rows[4].avg_response == 1000);
  CHECK(t.rows[4].jobs == 3);
  CHECK(t.rows[5].policy == "dasa");
  CHECK(t.rows[5].avg_response == Rat(4000, 3));

  REQUIRE(t.reductions.size() == 1);
  CHECK(t.reductions[0].versus == "dasa");
  CHECK(t.reductions[0].reduction == Rat(1, 4));
}

TEST_CASE("reduction arithmetic at the edges") {
  SUBCASE("tie gives zero reduction") {
    std::vector<MetricsReport> reports{report("w", "nmlfq", 1000, 2), report("w", "edf", 1000, 2)};
    ComparisonTable t = compare(reports);
    REQUIRE(t.reductions.size() == 1);
    CHECK(t.reductions[0].reduction == 0);
  }
  SUBCASE("a zero baseline is reported as zero, not a division error") {
    std::vector<MetricsReport> reports{report("w", "nmlfq", 500, 1), report("w", "edf", 0, 0)};
    ComparisonTable t = compare(reports);
    REQUIRE(t.reductions.size() == 1);
    CHECK(t.reductions[0].other_response == 0);
    CHECK(t.reductions[0].reduction == 0);
  }
  SUBCASE("no reductions without a pooled nmlfq row") {
    std::vector<MetricsReport> reports{report("w", "edf", 500, 1), report("w", "fcfs", 800, 1)};
    ComparisonTable t = compare(reports);
    CHECK(t.reductions.empty());
  }
}

TEST_CASE("mismatched suites are rejected") {
  SUBCASE("duplicate pair") {
    std::vector<MetricsReport> reports{report("w", "edf", 1, 1), report("w", "edf", 2, 1)};
    CHECK_THROWS_WITH_AS(compare(reports),
                         "duplicate report for workload 'w' under policy 'edf'", MismatchedSuites);
  }
  SUBCASE("hole in the grid") {
    std::vector<MetricsReport> reports{report("w1", "edf", 1, 1), report("w1", "rr", 1, 1),
                                       report("w2", "edf", 1, 1)};
    CHECK_THROWS_WITH_AS(compare(reports), "policy 'rr' has no report for workload 'w2'",
                         MismatchedSuites);
  }
}

TEST_CASE("comparison csv and text golden output") {
  std::vector<MetricsReport> reports{report("w", "nmlfq", 1500, 2), report("w", "dasa", 2000, 2)};
  ComparisonTable t = compare(reports);

  CHECK(comparison_csv(t) ==
        "# schedsim comparison v1\n"
        "workload,policy,jobs,dispatched,completed,misses,miss_ratio,avg_response,"
        "avg_turnaround,avg_waiting,cpu_utilization,total_value\n"
        "w,nmlfq,2,2,2,0,0,750,0,0,1,0\n"
        "w,dasa,2,2,2,0,0,1000,0,0,1,0\n"
        "aggregate,nmlfq,2,2,2,0,0,750,0,0,1,0\n"
        "aggregate,dasa,2,2,2,0,0,1000,0,0,1,0\n"
        "#reductions\n"
        "versus,other_avg_response,nmlfq_avg_response,reduction\n"
        "dasa,1000,750,0.25\n");

  std::string text = comparison_text(t);
  CHECK(text.find("workload") != std::string::npos);
  CHECK(text.find("nmlfq vs dasa: avg response 750 vs 1000, reduction 25%") != std::string::npos);
}

TEST_CASE("comparison svg is deterministic and scales bars exactly") {
  std::vector<MetricsReport> reports{report("w", "nmlfq", 1500, 2), report("w", "dasa", 2000, 2)};
  ComparisonTable t = compare(reports);
  std::string svg = comparison_svg(t);
  CHECK(svg == comparison_svg(t));
  // max bar 1000 fills the 300px chart; 750 scales to floor(750*300/1000).
  CHECK(svg.find("height=\"300\"") != std::string::npos);
  CHECK(svg.find("height=\"225\"") != std::string::npos);
  CHECK(svg.find(">nmlfq</text>") != std::string::npos);
  CHECK(svg.find(">dasa</text>") != std::string::npos);
}
