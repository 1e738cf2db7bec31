#include "schedsim/metrics.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace schedsim {

namespace {

Rat ratio(ticks_t num, std::size_t den) { return den == 0 ? Rat(0) : rat(num) / rat(den); }

}  // namespace

MetricsReport compute(const Trace& trace, const std::vector<JobState>& jobs) {
  for (const JobState& j : jobs)
    if (j.state != RunState::Completed && j.state != RunState::Aborted) {
      std::ostringstream msg;
      msg << "job " << j.spec.id << " is still live; metrics need a finished run";
      throw IncompleteTrace(msg.str());
    }

  MetricsReport r;
  r.workload = trace.workload;
  r.policy = trace.policy;
  r.jobs = jobs.size();
  r.busy_ticks = trace.busy().count();
  r.makespan_ticks = trace.makespan.ticks();

  std::optional<TimePoint> max_completion;
  std::optional<TimePoint> min_arrival;
  for (const JobState& j : jobs) {
    JobMetrics m;
    m.id = j.spec.id;
    if (!min_arrival || j.spec.arrival < *min_arrival) min_arrival = j.spec.arrival;
    if (j.first_dispatch) {
      m.response = *j.first_dispatch - j.spec.arrival;
      ++r.dispatched;
      r.response_sum += m.response->count();
    }
    if (j.state == RunState::Completed) {
      ++r.completed;
      m.turnaround = *j.completion - j.spec.arrival;
      m.waiting = *m.turnaround - j.spec.burst;
      r.turnaround_sum += m.turnaround->count();
      r.waiting_sum += m.waiting->count();
      m.met_deadline = *j.completion <= j.spec.deadline;
      if (!max_completion || *j.completion > *max_completion) max_completion = j.completion;
    }
    if (m.met_deadline) {
      m.value_accrued = j.spec.value;
      r.total_value += m.value_accrued;
    } else {
      ++r.misses;
    }
    r.per_job.push_back(std::move(m));
  }

  r.miss_ratio = ratio(r.misses, r.jobs);
  r.cpu_utilization = r.makespan_ticks == 0 ? Rat(0) : rat(r.busy_ticks) / rat(r.makespan_ticks);
  r.avg_response = ratio(r.response_sum, r.dispatched);
  r.avg_turnaround = ratio(r.turnaround_sum, r.completed);
  r.avg_waiting = ratio(r.waiting_sum, r.completed);
  if (max_completion && min_arrival) r.overall_turnaround = *max_completion - *min_arrival;
  return r;
}

ComparisonTable compare(const std::vector<MetricsReport>& reports) {
  std::vector<std::string> workloads;
  std::vector<std::string> policies;
  std::map<std::pair<std::string, std::string>, const MetricsReport*> by_key;
  for (const MetricsReport& r : reports) {
    if (std::find(workloads.begin(), workloads.end(), r.workload) == workloads.end())
      workloads.push_back(r.workload);
    if (std::find(policies.begin(), policies.end(), r.policy) == policies.end())
      policies.push_back(r.policy);
    if (!by_key.emplace(std::make_pair(r.workload, r.policy), &r).second)
      throw MismatchedSuites("duplicate report for workload '" + r.workload + "' under policy '" +
                             r.policy + "'");
  }
  for (const std::string& p : policies)
    for (const std::string& w : workloads)
      if (!by_key.count({w, p}))
        throw MismatchedSuites("policy '" + p + "' has no report for workload '" + w + "'");

  ComparisonTable t;
  auto fill = [](ComparisonRow& row, const MetricsReport& r) {
    row.jobs = r.jobs;
    row.dispatched = r.dispatched;
    row.completed = r.completed;
    row.misses = r.misses;
    row.miss_ratio = r.miss_ratio;
    row.avg_response = r.avg_response;
    row.avg_turnaround = r.avg_turnaround;
    row.avg_waiting = r.avg_waiting;
    row.cpu_utilization = r.cpu_utilization;
    row.total_value = r.total_value;
  };
  for (const std::string& w : workloads)
    for (const std::string& p : policies) {
      ComparisonRow row;
      row.workload = w;
      row.policy = p;
      fill(row, *by_key.at({w, p}));
      t.rows.push_back(std::move(row));
    }

  // Pooled per-policy aggregates: sums over raw ticks and counts, so the
  // aggregate equals the dispatch-count-weighted mean of the case rows.
  std::map<std::string, ComparisonRow> agg;
  for (const std::string& p : policies) {
    ComparisonRow row;
    row.workload = "aggregate";
    row.policy = p;
    ticks_t response_sum = 0, turnaround_sum = 0, waiting_sum = 0, busy = 0, makespan = 0;
    for (const std::string& w : workloads) {
      const MetricsReport& r = *by_key.at({w, p});
      row.jobs += r.jobs;
      row.dispatched += r.dispatched;
      row.completed += r.completed;
      row.misses += r.misses;
      row.total_value += r.total_value;
      response_sum += r.response_sum;
      turnaround_sum += r.turnaround_sum;
      waiting_sum += r.waiting_sum;
      busy += r.busy_ticks;
      makespan += r.makespan_ticks;
    }
    row.miss_ratio = ratio(row.misses, row.jobs);
    row.avg_response = ratio(response_sum, row.dispatched);
    row.avg_turnaround = ratio(turnaround_sum, row.completed);
    row.avg_waiting = ratio(waiting_sum, row.completed);
    row.cpu_utilization = makespan == 0 ? Rat(0) : rat(busy) / rat(makespan);
    agg.emplace(p, row);
    t.rows.push_back(agg.at(p));
  }

  if (agg.count("nmlfq")) {
    const Rat nmlfq_response = agg.at("nmlfq").avg_response;
    for (const std::string& p : policies) {
      if (p == "nmlfq") continue;
      ReductionRow red;
      red.versus = p;
      red.other_response = agg.at(p).avg_response;
      red.nmlfq_response = nmlfq_response;
      if (red.other_response != 0)
        red.reduction = (red.other_response - nmlfq_response) / red.other_response;
      t.reductions.push_back(std::move(red));
    }
  }
  return t;
}

std::string metrics_csv(const MetricsReport& r) {
  std::ostringstream os;
  os << "# schedsim metrics v1\n";
  os << "# workload: " << r.workload << "\n";
  os << "# policy: " << r.policy << "\n";
  os << "id,response,turnaround,waiting,met_deadline,value_accrued\n";
  for (const JobMetrics& m : r.per_job) {
    os << m.id << ',';
    if (m.response) os << m.response->count();
    os << ',';
    if (m.turnaround) os << m.turnaround->count();
    os << ',';
    if (m.waiting) os << m.waiting->count();
    os << ',' << (m.met_deadline ? 1 : 0) << ',' << lossless_string(m.value_accrued) << "\n";
  }
  os << "#summary\n";
  os << "jobs," << r.jobs << "\n";
  os << "dispatched," << r.dispatched << "\n";
  os << "completed," << r.completed << "\n";
  os << "misses," << r.misses << "\n";
  os << "miss_ratio," << lossless_string(r.miss_ratio) << "\n";
  os << "cpu_utilization," << lossless_string(r.cpu_utilization) << "\n";
  os << "avg_response," << lossless_string(r.avg_response) << "\n";
  os << "avg_turnaround," << lossless_string(r.avg_turnaround) << "\n";
  os << "avg_waiting," << lossless_string(r.avg_waiting) << "\n";
  os << "total_value," << lossless_string(r.total_value) << "\n";
  os << "overall_turnaround," << r.overall_turnaround.count() << "\n";
  os << "makespan," << r.makespan_ticks << "\n";
  os << "busy," << r.busy_ticks << "\n";
  return os.str();
}

std::string comparison_csv(const ComparisonTable& t) {
  std::ostringstream os;
  os << "# schedsim comparison v1\n";
  os << "workload,policy,jobs,dispatched,completed,misses,miss_ratio,avg_response,"
        "avg_turnaround,avg_waiting,cpu_utilization,total_value\n";
  for (const ComparisonRow& row : t.rows) {
    os << row.workload << ',' << row.policy << ',' << row.jobs << ',' << row.dispatched << ','
       << row.completed << ',' << row.misses << ',' << lossless_string(row.miss_ratio) << ','
       << lossless_string(row.avg_response) << ',' << lossless_string(row.avg_turnaround) << ','
       << lossless_string(row.avg_waiting) << ',' << lossless_string(row.cpu_utilization) << ','
       << lossless_string(row.total_value) << "\n";
  }
  if (!t.reductions.empty()) {
    os << "#reductions\n";
    os << "versus,other_avg_response,nmlfq_avg_response,reduction\n";
    for (const ReductionRow& red : t.reductions)
      os << red.versus << ',' << lossless_string(red.other_response) << ','
         << lossless_string(red.nmlfq_response) << ',' << lossless_string(red.reduction) << "\n";
  }
  return os.str();
}

std::string comparison_text(const ComparisonTable& t) {
  const std::vector<std::string> headers{"workload", "policy",   "jobs",     "disp",
                                         "done",     "miss",     "miss%",    "avg_resp",
                                         "avg_turn", "avg_wait", "cpu_util", "value"};
  std::vector<std::vector<std::string>> cells;
  for (const ComparisonRow& row : t.rows) {
    std::vector<std::string> c;
    c.push_back(row.workload);
    c.push_back(row.policy);
    c.push_back(std::to_string(row.jobs));
    c.push_back(std::to_string(row.dispatched));
    c.push_back(std::to_string(row.completed));
    c.push_back(std::to_string(row.misses));
    c.push_back(format_rational(row.miss_ratio * 100, 1));
    c.push_back(format_rational(row.avg_response, 1));
    c.push_back(format_rational(row.avg_turnaround, 1));
    c.push_back(format_rational(row.avg_waiting, 1));
    c.push_back(format_rational(row.cpu_utilization, 3));
    c.push_back(format_rational(row.total_value, 2));
    cells.push_back(std::move(c));
  }
  std::vector<std::size_t> width(headers.size());
  for (std::size_t i = 0; i < headers.size(); ++i) width[i] = headers[i].size();
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());

  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << "  ";
      std::string pad(width[i] - row[i].size(), ' ');
      if (i < 2)
        os << row[i] << pad;  // label columns left-aligned
      else
        os << pad << row[i];
    }
    os << "\n";
  };
  emit(headers);
  for (const auto& row : cells) emit(row);
  for (const ReductionRow& red : t.reductions)
    os << "nmlfq vs " << red.versus << ": avg response " << format_rational(red.nmlfq_response, 1)
       << " vs " << format_rational(red.other_response, 1) << ", reduction "
       << format_rational(red.reduction * 100, 2) << "%\n";
  return os.str();
}

std::string comparison_svg(const ComparisonTable& t) {
  // Bars for the pooled avg_response of each policy. Geometry is integer
  // pixels computed with exact arithmetic, so the file is reproducible.
  std::vector<std::pair<std::string, Rat>> bars;
  for (const ComparisonRow& row : t.rows)
    if (row.workload == "aggregate") bars.emplace_back(row.policy, row.avg_response);

  const int bar_w = 70, gap = 30, chart_h = 300, margin = 50;
  const int width = margin * 2 + (bars.empty() ? gap : static_cast<int>(bars.size()) * (bar_w + gap));
  const int height = chart_h + 2 * margin;
  Rat max_v = 0;
  for (const auto& [name, v] : bars) max_v = std::max(max_v, v);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  os << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "  <text x=\"" << margin << "\" y=\"" << margin - 20
     << "\" font-size=\"15\">average response time by policy (ticks)</text>\n";
  os << "  <line x1=\"" << margin << "\" y1=\"" << margin + chart_h << "\" x2=\"" << width - margin
     << "\" y2=\"" << margin + chart_h << "\" stroke=\"black\"/>\n";
  const char* fills[] = {"#4878a8", "#a85448", "#58a868", "#a88a48", "#7858a8", "#48a0a8"};
  int x = margin + gap / 2;
  std::size_t i = 0;
  for (const auto& [name, v] : bars) {
    int h = 0;
    if (max_v != 0) {
      // floor(v * chart_h / max_v), exact
      BigInt num = numerator(v) * denominator(max_v) * chart_h;
      BigInt den = denominator(v) * numerator(max_v);
      h = static_cast<int>(num / den);
    }
    int y = margin + chart_h - h;
    os << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w << "\" height=\"" << h
       << "\" fill=\"" << fills[i % 6] << "\"/>\n";
    os << "  <text x=\"" << x + bar_w / 2 << "\" y=\"" << margin + chart_h + 18
       << "\" text-anchor=\"middle\">" << name << "</text>\n";
    os << "  <text x=\"" << x + bar_w / 2 << "\" y=\"" << y - 6 << "\" text-anchor=\"middle\">"
       << format_rational(v, 1) << "</text>\n";
    x += bar_w + gap;
    ++i;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace schedsim
