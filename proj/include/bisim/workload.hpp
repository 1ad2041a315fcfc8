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
#include <optional>
#include <string>
#include <vector>

#include "bisim/engine.hpp"
#include "bisim/rng.hpp"
#include "bisim/topology.hpp"

namespace bisim {

enum class ProfileName { DbQuery, HttpPage, OlapView, EtlBatch };

std::string to_string(ProfileName p);
ProfileName profile_name_from_string(const std::string& s);

/// Name of a profile's response-time metric series.
std::string response_series_name(ProfileName p);

struct TrafficProfile {
  ProfileName name = ProfileName::DbQuery;
  ServiceRole target_role = ServiceRole::DwDm;
  Distribution interarrival;       // session interarrival per client
  Distribution request_bytes;
  Distribution response_bytes;
  Distribution requests_per_session;
  Distribution think_time;
  bool enabled = true;

  void validate() const;  // throws ValidationError
  bool operator==(const TrafficProfile&) const = default;
};

/// Reference mix derived from the calibration: database queries and HTTP
/// object fetches enabled, OLAP view and ETL batch profiles defined but off.
std::vector<TrafficProfile> default_profiles(const CalibrationParams& params);

enum class RequestState { InFlight, Completed, Rejected };

struct Request {
  std::uint64_t id = 0;
  std::uint64_t session_id = 0;
  SimTime issued_at = 0.0;
  double size_bytes = 0.0;
  double response_size_bytes = 0.0;
  RequestState state = RequestState::InFlight;
  std::optional<SimTime> completion_time;
};

struct SessionStart {
  SimTime at = 0.0;
  std::string client;
  ProfileName profile = ProfileName::DbQuery;
};

/// Session-start schedule: every client produces sessions per each enabled
/// profile's interarrival distribution until the horizon. Deterministic for
/// a given master seed; streams are named per (profile, client).
std::vector<SessionStart> generate_sessions(const std::vector<TrafficProfile>& profiles,
                                            const std::vector<std::string>& clients,
                                            SimTime horizon, std::uint64_t master_seed);

/// Realized session: the request count is drawn once at construction, sizes
/// and think times per request from the session's own stream.
class Session {
 public:
  Session(std::uint64_t id, std::string client, const TrafficProfile& profile, SimTime start,
          RngStream stream);

  /// Draws the next request's sizes; std::nullopt once the realized
  /// requests_per_session count is exhausted.
  std::optional<Request> next_request(SimTime now, std::uint64_t request_id);

  double draw_think_time();

  std::uint64_t id() const { return id_; }
  const std::string& client() const { return client_; }
  const TrafficProfile& profile() const { return *profile_; }
  std::uint64_t planned_requests() const { return planned_requests_; }
  std::uint64_t issued_requests() const { return issued_; }
  SimTime start() const { return start_; }

 private:
  std::uint64_t id_;
  std::string client_;
  const TrafficProfile* profile_;
  SimTime start_;
  RngStream stream_;
  std::uint64_t planned_requests_ = 0;
  std::uint64_t issued_ = 0;
};

}  // namespace bisim
