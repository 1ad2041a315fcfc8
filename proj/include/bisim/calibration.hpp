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

namespace bisim {

enum class Model { A, B, C, Custom };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

/// Every number the simulated architectures need but the compared designs do
/// not pin down themselves: populations, service rates, queue depths, link
/// parameters, security costs and the workload mix. The defaults below are
/// the committed reference calibration; scenario files may override any
/// field, and `sweep` varies one at a time.
struct CalibrationParams {
  // Populations / array sizes.
  int client_count = 48;
  int olap_count = 5;
  int db_array_count = 4;      // servers per database array (there are two arrays)
  int core_switch_count = 4;   // high-end routing switch tier
  int generic_security_count = 2;  // standby security servers in the DMZ

  // Station service rates, in segments per second.
  double client_rate = 4000.0;
  double cloud_switch_rate = 8000.0;
  double core_switch_rate = 16000.0;
  double firewall_rate = 4000.0;
  double utm_switch_rate = 4000.0;
  double rdbms_rate = 55.0;
  double ldap_rate = 55.0;
  double monitor_rate = 60.0;
  double olap_rate = 1200.0;
  double db_rate = 1200.0;

  // Queue capacities, in segments (occupancy includes the segment in service).
  int dmz_queue_capacity = 20;
  int cloud_queue_capacity = 20000;
  int client_queue_capacity = 4096;

  // Links.
  double extranet_bandwidth_bps = 50e6;
  double dmz_bandwidth_bps = 100e6;
  double cloud_bandwidth_bps = 1e9;
  double link_delay_s = 0.0005;

  // Transport.
  double mss_bytes = 1460.0;
  int window_segments = 64;
  double rto_s = 2.5;
  double rto_backoff = 2.0;
  int max_attempts = 6;

  // Security service costs (seconds unless stated).
  double firewall_request_cost = 0.0002;
  double firewall_session_cost = 0.0005;
  double ldap_session_cost = 0.004;
  double rdbms_rules_request_cost = 0.002;   // charged on database-bound requests
  double monitor_byte_cost = 5.0e-6;         // DB activity monitor, per payload byte
  double idps_request_cost = 0.0;            // standby servers carry no load by default
  double encryption_request_cost = 0.0003;
  double encryption_added_bytes = 64.0;

  // Workload profiles (reference mix: database queries + HTTP objects).
  double db_session_interarrival_s = 240.0;  // per client
  double db_requests_per_session = 1.0;
  double db_request_bytes = 1200.0;
  double db_response_bytes = 150000.0;
  double db_think_time_s = 4.0;
  double http_session_interarrival_s = 60.0;  // per client
  double http_requests_per_session = 6.0;
  double http_request_bytes = 500.0;
  double http_response_bytes = 4000.0;
  double http_think_time_s = 1.5;

  /// Throws InvalidCalibration naming the offending field.
  void validate() const;

  bool operator==(const CalibrationParams&) const = default;
};

}  // namespace bisim
