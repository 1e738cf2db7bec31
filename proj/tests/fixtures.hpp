#pragma once

#include <initializer_list>
#include <string>

#include "schedsim/task.hpp"

namespace schedsim::fixtures {

struct Row {
  ticks_t arrival;
  ticks_t burst;
  ticks_t deadline;
  Rat value = 1;
};

// Ids are assigned in listing order, so list rows sorted by arrival.
inline Workload make_workload(std::string name, std::initializer_list<Row> rows) {
  Workload w;
  w.name = std::move(name);
  JobId id = 0;
  for (const Row& r : rows)
    w.tasks.push_back({id++, at_tick(r.arrival), ticks(r.burst), at_tick(r.deadline), r.value});
  return w;
}

}  // namespace schedsim::fixtures
