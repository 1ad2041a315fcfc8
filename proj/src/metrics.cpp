/*
 * Copyright 2026 The bisim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "bisim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

using nlohmann::ordered_json;

namespace bisim {

namespace {

// Shortest round-trip decimal form, shared by CSV and JSON exports so the
// two stay consistent byte-wise.
std::string fmt(double v) {
  return ordered_json(v).dump();
}

std::string fmt_opt(const SeriesSummary& s, double SeriesSummary::*field) {
  return s.defined ? fmt(s.*field) : std::string();
}

}  // namespace

void MetricSeries::record(SimTime t, double v) {
  if (!samples_.empty() && t < samples_.back().first) {
    std::ostringstream msg;
    msg << "series " << name_ << ": sample at t=" << t << " precedes last t="
        << samples_.back().first;
    throw NonMonotonicTime(msg.str());
  }
  samples_.emplace_back(t, v);
}

SeriesSummary MetricSeries::summarize(SimTime from_time) const {
  SeriesSummary s;
  s.name = name_;
  std::vector<double> values;
  values.reserve(samples_.size());
  for (const auto& [t, v] : samples_) {
    if (t >= from_time) values.push_back(v);
  }
  s.count = values.size();
  if (values.empty()) return s;

  s.defined = true;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  auto nearest_rank = [&](double p) {
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(values.size())));
    if (rank == 0) rank = 1;
    return values[rank - 1];
  };
  s.p50 = nearest_rank(0.50);
  s.p95 = nearest_rank(0.95);
  s.max = values.back();
  return s;
}

double NodeUsage::offered_utilization(double elapsed) const {
  if (elapsed <= 0.0 || departures == 0) return 0.0;
  double mean_service = busy_time / static_cast<double>(departures);
  return static_cast<double>(arrivals) * mean_service / elapsed;
}

MetricSeries& MetricsCollector::series(const std::string& name) {
  auto it = series_.find(name);
  if (it == series_.end()) it = series_.emplace(name, MetricSeries(name)).first;
  return it->second;
}

void MetricsCollector::record(const std::string& name, SimTime t, double v) {
  series(name).record(t, v);
}

void MetricsCollector::count_retransmission(SimTime t) {
  retransmission_times_.push_back(t);
  ++counters_.retransmissions;
}

void MetricsCollector::count_drop(SimTime t) {
  drop_times_.push_back(t);
  ++counters_.drops;
}

NodeUsage& MetricsCollector::node(const std::string& id) {
  return nodes_[id];
}

std::string MetricsCollector::export_raw_csv() const {
  std::ostringstream out;
  out << "series,time,value\n";
  for (const auto& [name, series] : series_) {
    for (const auto& [t, v] : series.samples()) {
      out << name << "," << fmt(t) << "," << fmt(v) << "\n";
    }
  }
  return out.str();
}

namespace {

std::vector<std::uint64_t> window_counts(const std::vector<SimTime>& times, SimTime from,
                                         SimTime to, int windows) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max(windows, 1)), 0);
  if (!(to > from)) return counts;
  double width = (to - from) / static_cast<double>(counts.size());
  for (SimTime t : times) {
    if (t < from || t > to) continue;
    auto idx = static_cast<std::size_t>((t - from) / width);
    if (idx >= counts.size()) idx = counts.size() - 1;
    ++counts[idx];
  }
  return counts;
}

}  // namespace

MetricsReport MetricsCollector::summarize(const ReportMeta& meta) const {
  MetricsReport report;
  report.scenario = meta.scenario;
  report.model = meta.model;
  report.seed = meta.seed;
  report.horizon = meta.horizon;
  report.warmup_fraction = meta.warmup_fraction;
  report.measurement_windows = meta.measurement_windows;
  report.resolved_config = meta.resolved_config;
  report.counters = counters_;
  report.nodes = nodes_;

  SimTime warmup_end = meta.horizon * meta.warmup_fraction;
  for (const auto& [name, series] : series_) {
    report.series.push_back(series.summarize(warmup_end));
  }
  report.retransmissions_per_window =
      window_counts(retransmission_times_, warmup_end, meta.horizon, meta.measurement_windows);
  report.drops_per_window =
      window_counts(drop_times_, warmup_end, meta.horizon, meta.measurement_windows);
  return report;
}

const SeriesSummary* MetricsReport::find_series(const std::string& name) const {
  for (const SeriesSummary& s : series) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

double MetricsReport::series_mean(const std::string& name) const {
  const SeriesSummary* s = find_series(name);
  if (!s) throw CatalogMismatch("report " + scenario + " has no series " + name);
  return s->mean;
}

std::uint64_t MetricsReport::windows_with_retransmissions_above(std::uint64_t threshold) const {
  std::uint64_t n = 0;
  for (std::uint64_t c : retransmissions_per_window) {
    if (c > threshold) ++n;
  }
  return n;
}

ordered_json MetricsReport::to_json() const {
  ordered_json j;
  j["format_version"] = format_version;
  j["scenario"] = scenario;
  j["model"] = model;
  j["seed"] = seed;
  j["horizon_s"] = horizon;
  j["warmup_fraction"] = warmup_fraction;
  j["measurement_windows"] = measurement_windows;
  j["resolved_config"] = resolved_config;

  ordered_json series_json = ordered_json::array();
  for (const SeriesSummary& s : series) {
    ordered_json row;
    row["series"] = s.name;
    row["count"] = s.count;
    row["defined"] = s.defined;
    if (s.defined) {
      row["mean"] = s.mean;
      row["p50"] = s.p50;
      row["p95"] = s.p95;
      row["max"] = s.max;
    } else {
      row["mean"] = nullptr;
      row["p50"] = nullptr;
      row["p95"] = nullptr;
      row["max"] = nullptr;
    }
    series_json.push_back(std::move(row));
  }
  j["series"] = std::move(series_json);

  ordered_json nodes_json = ordered_json::object();
  for (const auto& [id, u] : nodes) {
    ordered_json n;
    n["zone"] = u.zone;
    n["arrivals"] = u.arrivals;
    n["departures"] = u.departures;
    n["drops"] = u.drops;
    n["busy_time"] = u.busy_time;
    n["occupancy_integral"] = u.occupancy_integral;
    n["sojourn_sum"] = u.sojourn_sum;
    n["processed_bytes"] = u.processed_bytes;
    n["forwarded_bytes"] = u.forwarded_bytes;
    nodes_json[id] = std::move(n);
  }
  j["nodes"] = std::move(nodes_json);

  ordered_json c;
  c["sessions_started"] = counters.sessions_started;
  c["sessions_denied"] = counters.sessions_denied;
  c["issued"] = counters.issued;
  c["completed"] = counters.completed;
  c["rejected"] = counters.rejected;
  c["in_flight_at_horizon"] = counters.in_flight_at_horizon;
  c["drops"] = counters.drops;
  c["retransmissions"] = counters.retransmissions;
  j["counters"] = std::move(c);

  j["retransmissions_per_window"] = retransmissions_per_window;
  j["drops_per_window"] = drops_per_window;
  return j;
}

MetricsReport MetricsReport::from_json(const ordered_json& j) {
  try {
    MetricsReport r;
    r.format_version = j.at("format_version").get<int>();
    r.scenario = j.at("scenario").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.horizon = j.at("horizon_s").get<double>();
    r.warmup_fraction = j.at("warmup_fraction").get<double>();
    r.measurement_windows = j.at("measurement_windows").get<int>();
    r.resolved_config = j.at("resolved_config");
    for (const auto& row : j.at("series")) {
      SeriesSummary s;
      s.name = row.at("series").get<std::string>();
      s.count = row.at("count").get<std::uint64_t>();
      s.defined = row.at("defined").get<bool>();
      if (s.defined) {
        s.mean = row.at("mean").get<double>();
        s.p50 = row.at("p50").get<double>();
        s.p95 = row.at("p95").get<double>();
        s.max = row.at("max").get<double>();
      }
      r.series.push_back(std::move(s));
    }
    for (const auto& [id, n] : j.at("nodes").items()) {
      NodeUsage u;
      u.zone = n.at("zone").get<std::string>();
      u.arrivals = n.at("arrivals").get<std::uint64_t>();
      u.departures = n.at("departures").get<std::uint64_t>();
      u.drops = n.at("drops").get<std::uint64_t>();
      u.busy_time = n.at("busy_time").get<double>();
      u.occupancy_integral = n.at("occupancy_integral").get<double>();
      u.sojourn_sum = n.at("sojourn_sum").get<double>();
      u.processed_bytes = n.at("processed_bytes").get<double>();
      u.forwarded_bytes = n.at("forwarded_bytes").get<double>();
      r.nodes[id] = u;
    }
    const auto& c = j.at("counters");
    r.counters.sessions_started = c.at("sessions_started").get<std::uint64_t>();
    r.counters.sessions_denied = c.at("sessions_denied").get<std::uint64_t>();
    r.counters.issued = c.at("issued").get<std::uint64_t>();
    r.counters.completed = c.at("completed").get<std::uint64_t>();
    r.counters.rejected = c.at("rejected").get<std::uint64_t>();
    r.counters.in_flight_at_horizon = c.at("in_flight_at_horizon").get<std::uint64_t>();
    r.counters.drops = c.at("drops").get<std::uint64_t>();
    r.counters.retransmissions = c.at("retransmissions").get<std::uint64_t>();
    r.retransmissions_per_window =
        j.at("retransmissions_per_window").get<std::vector<std::uint64_t>>();
    r.drops_per_window = j.at("drops_per_window").get<std::vector<std::uint64_t>>();
    return r;
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

ExportFormat export_format_from_string(const std::string& s) {
  if (s == "csv") return ExportFormat::Csv;
  if (s == "json") return ExportFormat::Json;
  throw UnsupportedFormat("unsupported export format: " + s);
}

std::string export_report(const MetricsReport& r, ExportFormat format) {
  switch (format) {
    case ExportFormat::Json:
      return r.to_json().dump(2) + "\n";
    case ExportFormat::Csv: {
      std::ostringstream out;
      out << "scenario,seed,series,mean,p50,p95,max,count\n";
      for (const SeriesSummary& s : r.series) {
        out << r.scenario << "," << r.seed << "," << s.name << "," << fmt_opt(s, &SeriesSummary::mean)
            << "," << fmt_opt(s, &SeriesSummary::p50) << "," << fmt_opt(s, &SeriesSummary::p95)
            << "," << fmt_opt(s, &SeriesSummary::max) << "," << s.count << "\n";
      }
      return out.str();
    }
  }
  throw UnsupportedFormat("unsupported export format");
}

MetricsReport import_report_json(const std::string& bytes) {
  ordered_json j;
  try {
    j = ordered_json::parse(bytes);
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return MetricsReport::from_json(j);
}

ComparisonReport compare(const MetricsReport& a, const MetricsReport& b) {
  std::vector<std::string> names_a, names_b;
  for (const auto& s : a.series) names_a.push_back(s.name);
  for (const auto& s : b.series) names_b.push_back(s.name);
  if (names_a != names_b) {
    throw CatalogMismatch("reports carry different series catalogs (" + a.scenario + " vs " +
                          b.scenario + ")");
  }

  ComparisonReport cmp;
  cmp.scenario_a = a.scenario;
  cmp.scenario_b = b.scenario;
  for (std::size_t i = 0; i < a.series.size(); ++i) {
    const SeriesSummary& sa = a.series[i];
    const SeriesSummary& sb = b.series[i];
    SeriesDelta d;
    d.name = sa.name;
    d.a_defined = sa.defined;
    d.b_defined = sb.defined;
    d.a_mean = sa.mean;
    d.b_mean = sb.mean;
    if (sa.defined && sb.defined) {
      d.delta = sb.mean - sa.mean;
      d.ratio = sb.mean != 0.0 ? sa.mean / sb.mean : 0.0;
    }
    cmp.deltas.push_back(std::move(d));
  }

  auto verdict = [&](std::string name, bool holds, std::string detail) {
    cmp.verdicts.push_back({std::move(name), holds, std::move(detail)});
  };
  auto mean_of = [](const MetricsReport& r, const std::string& name) {
    const SeriesSummary* s = r.find_series(name);
    return s && s->defined ? s->mean : 0.0;
  };

  double db_a = mean_of(a, "db_query_response");
  double db_b = mean_of(b, "db_query_response");
  std::ostringstream db_detail;
  db_detail << "a=" << db_a << " b=" << db_b;
  verdict("db_response_improved", db_b < db_a, db_detail.str());
  verdict("db_response_ratio_gt_10x", db_b > 0.0 && db_a / db_b > 10.0, db_detail.str());

  double http_a = mean_of(a, "http_object_response");
  double http_b = mean_of(b, "http_object_response");
  std::ostringstream http_detail;
  http_detail << "a=" << http_a << " b=" << http_b;
  verdict("http_response_improved", http_b < http_a, http_detail.str());

  std::ostringstream retx_detail;
  retx_detail << "a=" << a.counters.retransmissions << " b=" << b.counters.retransmissions;
  verdict("b_free_of_retransmissions", b.counters.retransmissions == 0, retx_detail.str());
  std::ostringstream drop_detail;
  drop_detail << "a=" << a.counters.drops << " b=" << b.counters.drops;
  verdict("b_free_of_drops", b.counters.drops == 0, drop_detail.str());
  return cmp;
}

ordered_json ComparisonReport::to_json() const {
  ordered_json j;
  j["scenario_a"] = scenario_a;
  j["scenario_b"] = scenario_b;
  ordered_json deltas_json = ordered_json::array();
  for (const SeriesDelta& d : deltas) {
    ordered_json row;
    row["series"] = d.name;
    row["a_mean"] = d.a_defined ? ordered_json(d.a_mean) : ordered_json(nullptr);
    row["b_mean"] = d.b_defined ? ordered_json(d.b_mean) : ordered_json(nullptr);
    row["delta"] = d.delta;
    row["ratio_a_over_b"] = d.ratio;
    deltas_json.push_back(std::move(row));
  }
  j["deltas"] = std::move(deltas_json);
  ordered_json verdicts_json = ordered_json::array();
  for (const Verdict& v : verdicts) {
    ordered_json row;
    row["name"] = v.name;
    row["holds"] = v.holds;
    row["detail"] = v.detail;
    verdicts_json.push_back(std::move(row));
  }
  j["verdicts"] = std::move(verdicts_json);
  return j;
}

std::string ComparisonReport::to_text() const {
  std::ostringstream out;
  out << "compare " << scenario_a << " vs " << scenario_b << "\n";
  for (const SeriesDelta& d : deltas) {
    out << "  " << d.name << ": a=" << (d.a_defined ? fmt(d.a_mean) : "-")
        << " b=" << (d.b_defined ? fmt(d.b_mean) : "-") << " delta=" << fmt(d.delta)
        << " ratio=" << fmt(d.ratio) << "\n";
  }
  for (const Verdict& v : verdicts) {
    out << "  [" << (v.holds ? "yes" : "no ") << "] " << v.name << " (" << v.detail << ")\n";
  }
  return out.str();
}

}  // namespace bisim
