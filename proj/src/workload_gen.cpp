#include "schedsim/workload_gen.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <random>
#include <sstream>

#include "schedsim/io.hpp"

namespace schedsim {

namespace {

// Bounded draws use plain modulo on the raw 64-bit stream. The standard
// distributions are implementation-defined, which would break the
// same-seed-same-bytes promise across standard libraries.
ticks_t draw(std::mt19937_64& rng, ticks_t lo, ticks_t hi) {
  return lo + rng() % (hi - lo + 1);
}

ticks_t round_to_ticks(const Rat& r) {
  BigInt num = numerator(r), den = denominator(r);
  return static_cast<ticks_t>((2 * num + den) / (2 * den));
}

void check_spec(const GenSpec& g) {
  auto fail = [](const std::string& why) { throw InfeasibleSpec(why); };
  if (g.n_tasks == 0) fail("n_tasks must be at least 1");
  if (g.span.count() == 0) fail("span must be at least 1 tick");
  if (g.burst_min < 1 || g.burst_min > g.burst_max)
    fail("burst range must satisfy 1 <= min <= max");
  if (g.tightness_lo < 1 || g.tightness_lo > g.tightness_hi)
    fail("tightness range must satisfy 1 <= lo <= hi");
  if (g.target_load <= 0) fail("target_load must be positive");
  if (g.value_mode == ValueMode::Uniform && (g.value_lo < 0 || g.value_lo > g.value_hi))
    fail("value range must satisfy 0 <= lo <= hi");
}

}  // namespace

Workload generate(const GenSpec& spec) {
  check_spec(spec);
  const std::size_t n = spec.n_tasks;
  const ticks_t total = round_to_ticks(spec.target_load * rat(spec.span));
  if (total < n * spec.burst_min || total > n * spec.burst_max) {
    std::ostringstream msg;
    msg << n << " bursts of " << spec.burst_min << ".." << spec.burst_max
        << " ticks cannot total " << total << " (target_load * span)";
    throw InfeasibleSpec(msg.str());
  }

  std::mt19937_64 rng(spec.seed);

  std::vector<ticks_t> arrivals(n);
  for (auto& a : arrivals) a = rng() % spec.span.count();
  std::sort(arrivals.begin(), arrivals.end());

  std::vector<ticks_t> bursts(n);
  for (auto& b : bursts) b = draw(rng, spec.burst_min, spec.burst_max);

  // Scale bursts to hit the target total exactly, then walk off the
  // rounding residue one tick at a time inside the allowed range.
  ticks_t sum = 0;
  for (ticks_t b : bursts) sum += b;
  if (sum != total) {
    for (auto& b : bursts) {
      BigInt scaled = (2 * BigInt(b) * total + sum) / (2 * BigInt(sum));
      b = std::clamp(static_cast<ticks_t>(scaled), spec.burst_min, spec.burst_max);
    }
    sum = 0;
    for (ticks_t b : bursts) sum += b;
    for (std::size_t i = 0; sum != total; i = (i + 1) % n) {
      if (sum < total && bursts[i] < spec.burst_max) {
        ++bursts[i];
        ++sum;
      } else if (sum > total && bursts[i] > spec.burst_min) {
        --bursts[i];
        --sum;
      }
    }
  }

  // Per-task deadline stretch factor in thousandths.
  const ticks_t k_lo = round_to_ticks(spec.tightness_lo * 1000);
  const ticks_t k_hi = round_to_ticks(spec.tightness_hi * 1000);
  std::vector<ticks_t> stretch(n);
  for (auto& k : stretch) k = draw(rng, k_lo, k_hi);

  std::vector<Rat> values(n, Rat(1));
  if (spec.value_mode == ValueMode::Uniform) {
    // Hundredths granularity keeps the files short and exact.
    const ticks_t v_lo = round_to_ticks(spec.value_lo * 100);
    const ticks_t v_hi = round_to_ticks(spec.value_hi * 100);
    for (auto& v : values) v = rat(draw(rng, v_lo, v_hi)) / 100;
  }

  Workload w;
  w.name = spec.name.empty() ? "gen-" + std::to_string(spec.seed) : spec.name;
  w.seed = spec.seed;
  w.tasks.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    TaskSpec t;
    t.id = static_cast<JobId>(i);
    t.arrival = at_tick(arrivals[i]);
    t.burst = ticks(bursts[i]);
    ticks_t stretched = (bursts[i] * stretch[i] + 500) / 1000;
    t.deadline = at_tick(arrivals[i] + std::max(bursts[i], stretched));
    t.value = values[i];
    w.tasks.push_back(std::move(t));
  }
  return w;
}

namespace {

std::optional<ticks_t> parse_u64(std::string_view s) {
  ticks_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& why) {
  throw ParseError("line " + std::to_string(line) + ": " + why);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Workload parse_workload(std::istream& in, std::string default_name) {
  Workload w;
  w.name = std::move(default_name);

  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  bool has_value = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# name: ", 0) == 0) w.name = line.substr(8);
      if (line.rfind("# seed: ", 0) == 0) {
        auto s = parse_u64(std::string_view(line).substr(8));
        if (!s) parse_fail(lineno, "seed is not an unsigned integer");
        w.seed = *s;
      }
      continue;
    }
    if (!header_seen) {
      if (line == "id,arrival,burst,deadline,value")
        has_value = true;
      else if (line == "id,arrival,burst,deadline")
        has_value = false;
      else
        parse_fail(lineno, "expected header id,arrival,burst,deadline[,value], got '" + line + "'");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields = split_csv(line);
    const std::size_t expected = has_value ? 5 : 4;
    if (fields.size() != expected) {
      std::ostringstream msg;
      msg << "expected " << expected << " fields, got " << fields.size();
      parse_fail(lineno, msg.str());
    }
    auto num = [&](std::size_t idx, const char* what) {
      auto v = parse_u64(fields[idx]);
      if (!v) parse_fail(lineno, std::string(what) + " '" + fields[idx] + "' is not an unsigned integer");
      return *v;
    };
    TaskSpec t;
    ticks_t id = num(0, "id");
    if (id > 0xffffffffULL) parse_fail(lineno, "id out of range");
    t.id = static_cast<JobId>(id);
    t.arrival = at_tick(num(1, "arrival"));
    t.burst = ticks(num(2, "burst"));
    t.deadline = at_tick(num(3, "deadline"));
    if (has_value) {
      auto v = parse_rational(fields[4]);
      if (!v) parse_fail(lineno, "value '" + fields[4] + "' is not a number");
      t.value = *v;
    }
    w.tasks.push_back(std::move(t));
  }
  if (!header_seen) throw ParseError("no header line found");

  auto violations = validate_workload(w);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "workload '" << w.name << "' is invalid:";
    for (const Violation& v : violations) msg << " [task " << v.id << ": " << v.rule << "]";
    throw ValidationError(msg.str());
  }
  return w;
}

Workload load_workload(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + file.string() + "'");
  return parse_workload(in, file.stem().string());
}

void serialize(const Workload& w, std::ostream& os) {
  os << "# schedsim workload v1\n";
  os << "# name: " << w.name << "\n";
  if (w.seed) os << "# seed: " << *w.seed << "\n";
  os << "id,arrival,burst,deadline,value\n";
  for (const TaskSpec& t : w.tasks)
    os << t.id << ',' << t.arrival.ticks() << ',' << t.burst.count() << ',' << t.deadline.ticks()
       << ',' << lossless_string(t.value) << "\n";
}

std::string to_csv(const Workload& w) {
  std::ostringstream os;
  serialize(w, os);
  return os.str();
}

const std::vector<GenSpec>& comparison_suite() {
  static const std::vector<GenSpec> suite = [] {
    std::vector<GenSpec> v;
    for (int k = 0; k < 20; ++k) {
      GenSpec g;
      // Loads sweep 0.60..0.96 then 1.04..1.40 in 0.04 steps; exact unity
      // is skipped so the two regimes stay the same size.
      int hundredths = k < 10 ? 60 + 4 * k : 104 + 4 * (k - 10);
      g.target_load = Rat(hundredths) / 100;
      g.n_tasks = static_cast<std::size_t>(15 + (25 * k) / 19);
      g.span = ticks(100000);
      g.burst_min = 500;
      g.burst_max = 5000;
      g.tightness_lo = Rat(12) / 10;
      g.tightness_hi = 2;
      g.value_mode = ValueMode::Unit;
      g.seed = static_cast<std::uint64_t>(k) + 1;
      std::ostringstream name;
      name << "case" << std::setw(2) << std::setfill('0') << (k + 1);
      g.name = name.str();
      v.push_back(std::move(g));
    }
    return v;
  }();
  return suite;
}

std::vector<std::string> write_suite(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> files;
  std::ostringstream manifest;
  manifest << "# schedsim suite v1\n";
  for (const GenSpec& g : comparison_suite()) {
    Workload w = generate(g);
    std::string fname = g.name + ".csv";
    write_file_atomic(dir / fname, to_csv(w));
    files.push_back(fname);
    manifest << fname << " seed=" << g.seed << " tasks=" << g.n_tasks << " load="
             << format_rational(g.target_load, 2) << "\n";
  }
  write_file_atomic(dir / "manifest.txt", manifest.str());
  files.push_back("manifest.txt");
  return files;
}

}  // namespace schedsim
