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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bisim/engine.hpp"

namespace bisim {

struct SeriesSummary {
  std::string name;
  std::uint64_t count = 0;
  bool defined = false;  // false when no samples survived the warm-up cut
  double mean = 0.0;
  double p50 = 0.0;
  double p95 = 0.0;
  double max = 0.0;

  bool operator==(const SeriesSummary&) const = default;
};

/// Timestamped samples of one observable. Sample times must be
/// nondecreasing; record() throws NonMonotonicTime otherwise.
class MetricSeries {
 public:
  explicit MetricSeries(std::string name) : name_(std::move(name)) {}

  void record(SimTime t, double v);
  const std::string& name() const { return name_; }
  const std::vector<std::pair<SimTime, double>>& samples() const { return samples_; }

  /// Nearest-rank percentiles over samples at t >= from_time.
  SeriesSummary summarize(SimTime from_time) const;

 private:
  std::string name_;
  std::vector<std::pair<SimTime, double>> samples_;
};

/// Per-station usage integrals, kept over the full run.
struct NodeUsage {
  std::string zone;
  std::uint64_t arrivals = 0;
  std::uint64_t departures = 0;
  std::uint64_t drops = 0;
  double busy_time = 0.0;
  double occupancy_integral = 0.0;
  double sojourn_sum = 0.0;
  double processed_bytes = 0.0;
  double forwarded_bytes = 0.0;

  double utilization(double elapsed) const { return elapsed > 0 ? busy_time / elapsed : 0.0; }
  double mean_occupancy(double elapsed) const {
    return elapsed > 0 ? occupancy_integral / elapsed : 0.0;
  }
  double mean_sojourn() const { return departures > 0 ? sojourn_sum / departures : 0.0; }
  /// Arrival-weighted utilization estimate; exceeds 1 when offered load
  /// outstrips the station (dropped work included via the served mean).
  double offered_utilization(double elapsed) const;

  bool operator==(const NodeUsage&) const = default;
};

struct RunCounters {
  std::uint64_t sessions_started = 0;
  std::uint64_t sessions_denied = 0;
  std::uint64_t issued = 0;
  std::uint64_t completed = 0;
  std::uint64_t rejected = 0;
  std::uint64_t in_flight_at_horizon = 0;
  std::uint64_t drops = 0;
  std::uint64_t retransmissions = 0;

  bool operator==(const RunCounters&) const = default;
};

struct ReportMeta {
  std::string scenario;
  std::string model;
  std::uint64_t seed = 0;
  SimTime horizon = 0.0;
  double warmup_fraction = 0.0;
  int measurement_windows = 8;
  nlohmann::ordered_json resolved_config;  // full provenance of the run
};

struct MetricsReport {
  int format_version = 1;
  std::string scenario;
  std::string model;
  std::uint64_t seed = 0;
  SimTime horizon = 0.0;
  double warmup_fraction = 0.0;
  int measurement_windows = 8;
  nlohmann::ordered_json resolved_config;
  std::vector<SeriesSummary> series;  // ordered by name
  std::map<std::string, NodeUsage> nodes;
  RunCounters counters;
  std::vector<std::uint64_t> retransmissions_per_window;
  std::vector<std::uint64_t> drops_per_window;

  const SeriesSummary* find_series(const std::string& name) const;
  /// Mean of a series; throws CatalogMismatch when the series is absent.
  double series_mean(const std::string& name) const;
  std::uint64_t windows_with_retransmissions_above(std::uint64_t threshold) const;

  nlohmann::ordered_json to_json() const;
  static MetricsReport from_json(const nlohmann::ordered_json& j);
};

enum class ExportFormat { Csv, Json };
ExportFormat export_format_from_string(const std::string& s);

/// Serializes a report with stable field ordering: deterministic bytes for a
/// deterministic run. The CSV carries the summary rows
/// (scenario,seed,series,mean,p50,p95,max,count); JSON carries everything
/// and re-imports exactly.
std::string export_report(const MetricsReport& r, ExportFormat format);
MetricsReport import_report_json(const std::string& bytes);

/// Gathers series, station usage and counters during a run and freezes them
/// into a MetricsReport.
class MetricsCollector {
 public:
  MetricSeries& series(const std::string& name);
  void record(const std::string& name, SimTime t, double v);
  void count_retransmission(SimTime t);
  void count_drop(SimTime t);
  NodeUsage& node(const std::string& id);
  RunCounters& counters() { return counters_; }
  const RunCounters& counters() const { return counters_; }

  /// Raw sample dump (series,time,value), one row per sample.
  std::string export_raw_csv() const;

  MetricsReport summarize(const ReportMeta& meta) const;

 private:
  std::map<std::string, MetricSeries> series_;
  std::vector<SimTime> retransmission_times_;
  std::vector<SimTime> drop_times_;
  std::map<std::string, NodeUsage> nodes_;
  RunCounters counters_;
};

struct SeriesDelta {
  std::string name;
  bool a_defined = false;
  bool b_defined = false;
  double a_mean = 0.0;
  double b_mean = 0.0;
  double delta = 0.0;  // b - a
  double ratio = 0.0;  // a / b when b != 0
};

struct Verdict {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct ComparisonReport {
  std::string scenario_a;
  std::string scenario_b;
  std::vector<SeriesDelta> deltas;
  std::vector<Verdict> verdicts;

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

/// Per-series deltas and ratios plus directional verdict flags. Throws
/// CatalogMismatch when the two reports carry different series catalogs.
ComparisonReport compare(const MetricsReport& a, const MetricsReport& b);

}  // namespace bisim
