#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "schedsim/engine.hpp"
#include "schedsim/io.hpp"
#include "schedsim/metrics.hpp"
#include "schedsim/policies/factory.hpp"
#include "schedsim/trace.hpp"
#include "schedsim/workload_gen.hpp"

namespace fs = std::filesystem;
using namespace schedsim;

namespace {

// Flag-level mistakes: same exit code as workload validation errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path out_root() {
  const char* env = std::getenv("SCHEDSIM_OUT");
  return env && *env ? fs::path(env) : fs::path(".");
}

Rat flag_rat(const std::string& text, const char* flag) {
  auto r = parse_rational(text);
  if (!r) throw UsageError(std::string(flag) + ": '" + text + "' is not a number");
  return *r;
}

std::pair<Rat, Rat> flag_range(const std::string& text, const char* flag) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw UsageError(std::string(flag) + ": expected LO:HI, got '" + text + "'");
  return {flag_rat(text.substr(0, colon), flag), flag_rat(text.substr(colon + 1), flag)};
}

std::string known_policies() {
  std::string out;
  for (const std::string& n : policy_names()) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

void check_policy_name(const std::string& name, const char* flag) {
  const auto& names = policy_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw UsageError(std::string(flag) + ": unknown policy '" + name + "' (expected one of " +
                     known_policies() + ")");
}

// Simulation knobs shared by `run` and `compare`. Rationals arrive as text
// so they stay exact; everything else binds directly.
struct SimFlags {
  ticks_t dispatch_latency = 0;
  ticks_t context_switch_cost = 0;
  ticks_t base_quantum = 1000;
  int max_levels = 8;
  std::string urgency_factor = "1";
  std::optional<ticks_t> aging_threshold;
  std::string admission = "planning";

  void attach(CLI::App* cmd) {
    cmd->add_option("--dispatch-latency", dispatch_latency,
                    "ticks charged before a different job starts running");
    cmd->add_option("--context-switch-cost", context_switch_cost,
                    "extra ticks charged on every switch to a different job");
    cmd->add_option("--base-quantum", base_quantum, "top-level quantum in ticks (nmlfq)");
    cmd->add_option("--max-levels", max_levels, "upper bound on nmlfq queue levels");
    cmd->add_option("--urgency-factor", urgency_factor,
                    "slack below factor*remaining promotes a job to the top level (nmlfq)");
    cmd->add_option_function<ticks_t>(
        "--aging-threshold", [this](ticks_t v) { aging_threshold = v; },
        "waiting ticks before a one-level promotion (nmlfq; default adapts to level count)");
    cmd->add_option("--admission", admission, "nmlfq admission mode: planning | accept_all");
  }

  SimConfig to_config() const {
    SimConfig s;
    s.dispatch_latency = ticks(dispatch_latency);
    s.context_switch_cost = ticks(context_switch_cost);
    s.nmlfq.base_quantum = ticks(base_quantum);
    s.nmlfq.max_levels = max_levels;
    s.nmlfq.urgency_factor = flag_rat(urgency_factor, "--urgency-factor");
    if (aging_threshold) s.nmlfq.aging_threshold = ticks(*aging_threshold);
    if (admission == "planning")
      s.nmlfq.admission = AdmissionMode::Planning;
    else if (admission == "accept_all")
      s.nmlfq.admission = AdmissionMode::AcceptAll;
    else
      throw UsageError("--admission: expected planning or accept_all, got '" + admission + "'");
    return s;
  }
};

struct GenFlags {
  std::size_t tasks = 20;
  std::string load = "0.8";
  ticks_t span = 100000;
  ticks_t burst_min = 500;
  ticks_t burst_max = 5000;
  std::string tightness = "1.2:2";
  std::string value_mode = "unit";
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tasks", tasks, "number of tasks to draw");
    cmd->add_option("--load", load, "target CPU load over the arrival span");
    cmd->add_option("--span", span, "arrival window in ticks");
    cmd->add_option("--burst-min", burst_min, "smallest burst in ticks");
    cmd->add_option("--burst-max", burst_max, "largest burst in ticks");
    cmd->add_option("--deadline-tightness", tightness,
                    "per-task deadline stretch factor range LO:HI");
    cmd->add_option("--value-mode", value_mode, "task values: unit | uniform:LO:HI");
    cmd->add_option("--seed", seed, "generator seed");
  }

  GenSpec to_spec() const {
    GenSpec g;
    g.n_tasks = tasks;
    g.target_load = flag_rat(load, "--load");
    g.span = ticks(span);
    g.burst_min = burst_min;
    g.burst_max = burst_max;
    std::tie(g.tightness_lo, g.tightness_hi) = flag_range(tightness, "--deadline-tightness");
    if (value_mode == "unit") {
      g.value_mode = ValueMode::Unit;
    } else if (value_mode.rfind("uniform:", 0) == 0) {
      g.value_mode = ValueMode::Uniform;
      std::tie(g.value_lo, g.value_hi) = flag_range(value_mode.substr(8), "--value-mode");
    } else {
      throw UsageError("--value-mode: expected unit or uniform:LO:HI, got '" + value_mode + "'");
    }
    g.seed = seed;
    return g;
  }
};

struct RunOpts {
  std::string workload;
  std::string policy;
  std::string out;
  SimFlags sim;
};

struct GenOpts {
  std::string out;
  GenFlags gen;
};

struct SuiteOpts {
  std::string out;
};

struct CompareOpts {
  std::string suite;
  std::string policies = "nmlfq,dasa,lbesa";
  std::string out;
  unsigned jobs = 1;
  SimFlags sim;
};

int cmd_run(const RunOpts& o) {
  if (o.policy.empty()) throw UsageError("--policy is required for run");
  check_policy_name(o.policy, "--policy");
  if (o.workload.empty()) throw UsageError("--workload is required for run");

  Workload w = load_workload(o.workload);
  SimConfig sim = o.sim.to_config();
  std::unique_ptr<Policy> pol = make_policy(o.policy, sim);
  RunResult res = run(w, *pol, sim);
  MetricsReport m = compute(res.trace, res.jobs);

  fs::path dir = o.out.empty() ? out_root() / "run" : fs::path(o.out);
  fs::create_directories(dir);
  write_file_atomic(dir / "trace.csv", to_csv(res.trace));
  write_file_atomic(dir / "metrics.csv", metrics_csv(m));
  std::string summary = comparison_text(compare({m}));
  write_file_atomic(dir / "summary.txt", summary);

  std::cout << summary;
  std::cout << "outputs in " << dir.string() << "\n";
  return 0;
}

int cmd_gen(const GenOpts& o) {
  Workload w = generate(o.gen.to_spec());
  fs::path file = o.out.empty() ? out_root() / (w.name + ".csv") : fs::path(o.out);
  if (!file.parent_path().empty()) fs::create_directories(file.parent_path());
  write_file_atomic(file, to_csv(w));
  std::cout << "wrote " << file.string() << " (" << w.tasks.size() << " tasks)\n";
  return 0;
}

int cmd_suite(const SuiteOpts& o) {
  fs::path dir = o.out.empty() ? out_root() / "suite" : fs::path(o.out);
  std::vector<std::string> files = write_suite(dir);
  std::cout << "wrote " << files.size() << " files to " << dir.string() << "\n";
  return 0;
}

// Case files in manifest order, else every *.csv in name order.
std::vector<fs::path> suite_cases(const fs::path& dir) {
  std::vector<fs::path> cases;
  if (fs::exists(dir / "manifest.txt")) {
    std::ifstream in(dir / "manifest.txt");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      cases.push_back(dir / line.substr(0, line.find(' ')));
    }
  } else if (fs::is_directory(dir)) {
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".csv") cases.push_back(e.path());
    std::sort(cases.begin(), cases.end());
  }
  return cases;
}

int cmd_compare(const CompareOpts& o) {
  if (o.suite.empty()) throw UsageError("--suite is required for compare");

  std::vector<std::string> policies;
  std::size_t listed = 0;
  for (std::size_t pos = 0; pos <= o.policies.size();) {
    std::size_t comma = o.policies.find(',', pos);
    if (comma == std::string::npos) comma = o.policies.size();
    std::string name = o.policies.substr(pos, comma - pos);
    pos = comma + 1;
    if (name.empty()) continue;
    ++listed;
    check_policy_name(name, "--policies");
    if (std::find(policies.begin(), policies.end(), name) == policies.end())
      policies.push_back(name);
  }
  if (listed < 2) throw UsageError("--policies: need at least two policies to compare");

  std::vector<fs::path> files = suite_cases(o.suite);
  if (files.empty()) throw UsageError("--suite: no cases found in '" + o.suite + "'");
  std::vector<Workload> cases;
  cases.reserve(files.size());
  for (const fs::path& f : files) cases.push_back(load_workload(f));

  const SimConfig sim = o.sim.to_config();

  // Every (case, policy) run lands in its own slot, so the result is the
  // same no matter how the workers interleave.
  const std::size_t total = cases.size() * policies.size();
  std::vector<MetricsReport> reports(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        const Workload& w = cases[i / policies.size()];
        const std::string& pname = policies[i % policies.size()];
        std::unique_ptr<Policy> pol = make_policy(pname, sim);
        RunResult res = run(w, *pol, sim);
        reports[i] = compute(res.trace, res.jobs);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (o.jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < o.jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  ComparisonTable table = compare(reports);
  std::string csv = comparison_csv(table);
  std::string text = comparison_text(table);
  std::string svg = comparison_svg(table);

  // All results exist before the first byte is written; a failure above
  // leaves the output directory untouched.
  fs::path dir = o.out.empty() ? out_root() / "compare" : fs::path(o.out);
  fs::create_directories(dir / "cases");
  for (const MetricsReport& r : reports)
    write_file_atomic(dir / "cases" / (r.workload + "." + r.policy + ".metrics.csv"),
                      metrics_csv(r));
  write_file_atomic(dir / "comparison.csv", csv);
  write_file_atomic(dir / "comparison.txt", text);
  write_file_atomic(dir / "avg_response.svg", svg);

  std::cout << text;
  std::cout << "outputs in " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic uniprocessor scheduling simulator"};
  app.require_subcommand(1);

  RunOpts run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "simulate one workload under one policy");
  run_cmd->add_option("--workload", run_opts.workload, "workload csv to simulate");
  run_cmd->add_option("--policy", run_opts.policy, "policy name (" + known_policies() + ")");
  run_cmd->add_option("--out", run_opts.out, "output directory (default $SCHEDSIM_OUT/run)");
  run_opts.sim.attach(run_cmd);

  GenOpts gen_opts;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate one seeded workload csv");
  gen_cmd->add_option("--out", gen_opts.out, "output file (default $SCHEDSIM_OUT/<name>.csv)");
  gen_opts.gen.attach(gen_cmd);

  SuiteOpts suite_opts;
  CLI::App* suite_cmd = app.add_subcommand("suite", "materialize the bundled comparison suite");
  suite_cmd->add_option("--out", suite_opts.out,
                        "output directory (default $SCHEDSIM_OUT/suite)");

  CompareOpts cmp_opts;
  CLI::App* cmp_cmd =
      app.add_subcommand("compare", "run several policies over a suite and tabulate");
  cmp_cmd->add_option("--suite", cmp_opts.suite, "directory holding case csvs (+ manifest.txt)");
  cmp_cmd->add_option("--policies", cmp_opts.policies, "comma-separated policy names");
  cmp_cmd->add_option("--out", cmp_opts.out, "output directory (default $SCHEDSIM_OUT/compare)");
  cmp_cmd->add_option("--jobs", cmp_opts.jobs, "worker threads for the case runs");
  cmp_opts.sim.attach(cmp_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help and version print and succeed
  }

  try {
    if (*run_cmd) return cmd_run(run_opts);
    if (*gen_cmd) return cmd_gen(gen_opts);
    if (*suite_cmd) return cmd_suite(suite_opts);
    return cmd_compare(cmp_opts);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InfeasibleSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
