#include <doctest.h>

#include <stdexcept>

#include "schedsim/event.hpp"
#include "schedsim/feasibility.hpp"
#include "schedsim/rational.hpp"
#include "schedsim/task.hpp"
#include "schedsim/time.hpp"
#include "fixtures.hpp"

using namespace schedsim;
using fixtures::make_workload;

TEST_CASE("tick arithmetic") {
  CHECK(ms(1).count() == 1000);
  CHECK(at_ms(4).ticks() == 4000);
  CHECK((ticks(300) + ticks(700)).count() == 1000);
  CHECK((ticks(700) - ticks(300)).count() == 400);
  CHECK((ticks(700) * 3).count() == 2100);
  CHECK((3 * ticks(700)).count() == 2100);
  CHECK((at_tick(500) + ticks(250)).ticks() == 750);
  CHECK((at_tick(500) - at_tick(200)).count() == 300);
  CHECK(ticks(5) < ticks(6));
  CHECK(at_tick(5) < at_tick(6));
}

TEST_CASE("negative durations are a hard error") {
  CHECK_THROWS_AS(ticks(300) - ticks(700), std::logic_error);
  CHECK_THROWS_AS(at_tick(200) - at_tick(500), std::logic_error);
  TimeDelta d = ticks(300);
  CHECK_THROWS_AS(d -= ticks(301), std::logic_error);
  CHECK(d.count() == 300);  // failed subtraction leaves the value alone
}

TEST_CASE("rational parsing") {
  CHECK(*parse_rational("12") == Rat(12));
  CHECK(*parse_rational("1.5") == Rat(3, 2));
  CHECK(*parse_rational("-0.25") == Rat(-1, 4));
  CHECK(*parse_rational("7/3") == Rat(7, 3));
  CHECK(*parse_rational("+2") == Rat(2));
  CHECK(*parse_rational("0.10") == Rat(1, 10));
  CHECK(!parse_rational(""));
  CHECK(!parse_rational("-"));
  CHECK(!parse_rational("1.2.3"));
  CHECK(!parse_rational("1/0"));
  CHECK(!parse_rational("two"));
  CHECK(!parse_rational("1e3"));
  CHECK(!parse_rational("1 "));
}

TEST_CASE("rational formatting") {
  CHECK(format_rational(Rat(3, 2)) == "1.5");
  CHECK(format_rational(Rat(5)) == "5");
  CHECK(format_rational(Rat(0)) == "0");
  CHECK(format_rational(Rat(-1, 4)) == "-0.25");
  CHECK(format_rational(Rat(1, 3)) == "0.333333333");
  CHECK(format_rational(Rat(2, 3)) == "0.666666667");  // half-up on the tail
  CHECK(format_rational(Rat(1, 3), 2) == "0.33");
  CHECK(format_rational(Rat(199, 100), 1) == "2");  // carry into the whole part trims the dot
  CHECK(format_rational(Rat(1, 2), 0) == "1");

  CHECK(*exact_decimal(Rat(1, 8)) == "0.125");
  CHECK(!exact_decimal(Rat(1, 3)));
  CHECK(lossless_string(Rat(1, 8)) == "0.125");
  CHECK(lossless_string(Rat(1, 3)) == "1/3");
  CHECK(lossless_string(Rat(7)) == "7");
}

TEST_CASE("event queue orders by time, then kind rank, then push order") {
  EventQueue q;
  q.push(at_tick(10), EventKind::Arrival, 1);
  q.push(at_tick(10), EventKind::Completion, 2);
  q.push(at_tick(5), EventKind::Reconfigure, 3);
  q.push(at_tick(10), EventKind::QuantumExpiry, 4);
  q.push(at_tick(10), EventKind::Reconfigure, 5);
  q.push(at_tick(10), EventKind::LatencyElapsed, 6);
  q.push(at_tick(10), EventKind::Arrival, 7);  // same slot as job 1, pushed later

  CHECK(q.pop().job == 3);  // earliest time wins regardless of kind
  CHECK(q.pop().job == 2);  // completion outranks everything at t=10
  CHECK(q.pop().job == 4);
  CHECK(q.pop().job == 1);  // arrival pushed first
  CHECK(q.pop().job == 7);
  CHECK(q.pop().job == 6);
  CHECK(q.pop().job == 5);
  CHECK(q.empty());
}

TEST_CASE("kind names") {
  CHECK(kind_name(EventKind::Completion) == "completion");
  CHECK(kind_name(EventKind::QuantumExpiry) == "quantum_expiry");
  CHECK(kind_name(EventKind::Arrival) == "arrival");
  CHECK(kind_name(EventKind::LatencyElapsed) == "latency_elapsed");
  CHECK(kind_name(EventKind::Reconfigure) == "reconfigure");
}

TEST_CASE("workload validation accepts a clean workload") {
  Workload w = make_workload("ok", {{0, 1000, 2000}, {500, 100, 900}});
  CHECK(validate_workload(w).empty());
}

TEST_CASE("workload validation names each breach") {
  SUBCASE("empty") {
    Workload w;
    w.name = "empty";
    auto v = validate_workload(w);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "non-empty");
  }
  SUBCASE("zero burst") {
    Workload w = make_workload("w", {{0, 0, 100}});
    auto v = validate_workload(w);
    REQUIRE(v.size() == 1);
    CHECK(v[0].id == 0);
    CHECK(v[0].rule == "burst >= 1");
  }
  SUBCASE("deadline not after arrival") {
    Workload w = make_workload("w", {{100, 50, 100}});
    auto v = validate_workload(w);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "deadline > arrival");
  }
  SUBCASE("negative value") {
    Workload w = make_workload("w", {{0, 10, 100, Rat(-1)}});
    auto v = validate_workload(w);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "value >= 0");
  }
  SUBCASE("duplicate id") {
    Workload w = make_workload("w", {{0, 10, 100}, {5, 10, 100}});
    w.tasks[1].id = 0;
    auto v = validate_workload(w);
    REQUIRE(!v.empty());
    bool found = false;
    for (const auto& b : v) found = found || b.rule == "unique id";
    CHECK(found);
  }
  SUBCASE("sparse ids") {
    Workload w = make_workload("w", {{0, 10, 100}, {5, 10, 100}});
    w.tasks[1].id = 7;
    auto v = validate_workload(w);
    bool found = false;
    for (const auto& b : v) found = found || b.rule == "dense ids";
    CHECK(found);
  }
  SUBCASE("out of arrival order") {
    Workload w = make_workload("w", {{0, 10, 100}, {5, 10, 100}});
    std::swap(w.tasks[0], w.tasks[1]);
    std::swap(w.tasks[0].id, w.tasks[1].id);  // keep ids dense, break the sort
    auto v = validate_workload(w);
    bool found = false;
    for (const auto& b : v) found = found || b.rule == "sorted by arrival then id";
    CHECK(found);
  }
}

TEST_CASE("slack is laxity and goes negative when the job is doomed") {
  JobState j = make_job({0, at_tick(0), ticks(3000), at_tick(3000), 1});
  CHECK(slack(j, at_tick(0)) == 0);
  CHECK(slack(j, at_tick(1000)) == -1000);
  JobState k = make_job({1, at_tick(0), ticks(3000), at_tick(10000), 1});
  CHECK(slack(k, at_tick(2000)) == 5000);
}

TEST_CASE("make_job starts not-arrived with full work left") {
  TaskSpec t{3, at_tick(10), ticks(500), at_tick(900), Rat(2)};
  JobState j = make_job(t);
  CHECK(j.spec == t);
  CHECK(j.remaining == ticks(500));
  CHECK(j.state == RunState::NotArrived);
  CHECK(j.level == 0);
  CHECK(!j.first_dispatch);
  CHECK(!j.completion);
}

TEST_CASE("prefix feasibility over deadline-sorted demand") {
  TimePoint now = at_tick(0);
  CHECK(feasible({}, now));
  CHECK(!feasible({{ticks(2001), at_tick(2000)}}, now));
  CHECK(feasible({{ticks(2000), at_tick(2000)}}, now));
  CHECK(!feasible({{ticks(1000), at_tick(1500)}, {ticks(1000), at_tick(1800)}}, now));
  CHECK(feasible({{ticks(1000), at_tick(1500)}, {ticks(1000), at_tick(2000)}}, now));
  // unsorted input: the copying overload sorts first
  CHECK(feasible({{ticks(1000), at_tick(2000)}, {ticks(500), at_tick(600)}}, now));
  // offset origin
  CHECK(!feasible({{ticks(1000), at_tick(1500)}}, at_tick(600)));
  CHECK(feasible({{ticks(900), at_tick(1500)}}, at_tick(600)));
}
