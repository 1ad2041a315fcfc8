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
#include <string>
#include <vector>

#include <json.hpp>

#include "bisim/calibration.hpp"
#include "bisim/metrics.hpp"
#include "bisim/routing.hpp"
#include "bisim/workload.hpp"

namespace bisim {

inline constexpr int kScenarioFormatVersion = 1;

struct ScenarioConfig {
  std::string name = "scenario";
  Model model = Model::A;
  std::uint64_t seed = 42;
  SimTime horizon_s = 1800.0;
  double warmup_fraction = 0.1;
  int measurement_windows = 8;
  CalibrationParams calibration;
  std::vector<TrafficProfile> profiles;       // empty -> default_profiles(calibration)
  std::vector<ForwardingRule> custom_rules;   // used by Model::Custom only
  bool export_raw_samples = false;

  /// Profiles with defaults filled in.
  std::vector<TrafficProfile> effective_profiles() const;

  /// Throws ValidationError with field-level messages.
  void validate() const;

  nlohmann::ordered_json to_json() const;
  static ScenarioConfig from_json(const nlohmann::ordered_json& j);
};

/// The bundled reference scenario for one architecture.
ScenarioConfig default_scenario(Model m);

ScenarioConfig load_scenario(const std::string& path);
void save_scenario(const ScenarioConfig& cfg, const std::string& path);

struct RunResult {
  MetricsReport report;
  std::string raw_samples_csv;  // filled when the scenario asks for it
  std::string trace_csv;        // realized sessions/requests, for replay
};

/// Builds topology, rules and workload from the config, runs the event
/// engine to the horizon and summarizes. Pure function of (config, seed).
RunResult run_scenario(const ScenarioConfig& cfg);

/// Calibration targets checked by the deterministic reference search.
struct CalibrationCheck {
  bool model_b_stable = false;          // every station utilization < 0.9, zero drops
  bool model_a_bottleneck = false;      // offered utilization > 1 somewhere in the DMZ
  bool model_a_db_response = false;     // mean db_query_response > 20 s
  bool model_a_http_response = false;   // mean http_object_response in [1 s, 3 s]
  bool model_a_segment_delay = false;   // mean tcp_segment_delay within +/-50% of 4 s
  bool model_a_retransmissions = false; // > 1000 in at least 2 measurement windows

  bool all() const {
    return model_b_stable && model_a_bottleneck && model_a_db_response &&
           model_a_http_response && model_a_segment_delay && model_a_retransmissions;
  }
  std::string to_text() const;
};

/// Evaluates the six reference targets for one parameter set by running
/// Models A and B.
CalibrationCheck evaluate_calibration(const CalibrationParams& params, std::uint64_t seed);

/// Deterministic grid search over client_count and a DMZ service-rate scale;
/// returns the first parameter set meeting every target. Throws
/// CalibrationInfeasible (reporting the per-cell failures) when the grid has
/// no feasible cell.
CalibrationParams calibrate_reference();
CalibrationParams calibrate_reference(const std::vector<CalibrationParams>& grid,
                                      std::uint64_t seed);

/// The grid walked by calibrate_reference, in evaluation order.
std::vector<CalibrationParams> calibration_grid();

}  // namespace bisim
