#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "schedsim/errors.hpp"
#include "schedsim/rational.hpp"
#include "schedsim/task.hpp"

namespace schedsim {

enum class ValueMode { Unit, Uniform };

// Seeded workload recipe. Arrivals are uniform over [0, span); bursts are
// drawn uniform in [burst_min, burst_max] and then scaled so the total work
// hits round(target_load * span) exactly; each deadline is the arrival plus
// the burst stretched by a per-task factor from [tightness_lo, tightness_hi].
struct GenSpec {
  std::size_t n_tasks = 0;
  Rat target_load = 1;
  TimeDelta span{};
  ticks_t burst_min = 1;
  ticks_t burst_max = 1;
  Rat tightness_lo = 1;
  Rat tightness_hi = 1;
  ValueMode value_mode = ValueMode::Unit;
  Rat value_lo = 1;  // used when value_mode == Uniform; hundredths granularity
  Rat value_hi = 1;
  std::uint64_t seed = 0;
  std::string name;  // defaults to "gen-<seed>"
};

// Deterministic: the same spec yields byte-identical serialized output on
// any host. Throws InfeasibleSpec when the ranges cannot reach the target
// load or are malformed.
Workload generate(const GenSpec& spec);

// CSV with header "id,arrival,burst,deadline,value" (value optional,
// defaults to 1). '#'-prefixed lines may carry name/seed metadata. Unknown
// columns are rejected. Throws ParseError (malformed text, with line
// numbers) or ValidationError (model invariant breaches, naming task ids).
Workload parse_workload(std::istream& in, std::string default_name);
Workload load_workload(const std::filesystem::path& file);

void serialize(const Workload& w, std::ostream& os);
std::string to_csv(const Workload& w);

// The bundled comparison suite: 20 frozen seeded cases sweeping target load
// 0.6..1.4 in 0.04 steps with the exact-unity point skipped (10 underloaded,
// 10 overloaded), 15..40 tasks each, seeds 1..20.
const std::vector<GenSpec>& comparison_suite();

// Writes each case as CSV plus a manifest (one case per line) into dir.
// Returns the file names written, manifest last.
std::vector<std::string> write_suite(const std::filesystem::path& dir);

}  // namespace schedsim
