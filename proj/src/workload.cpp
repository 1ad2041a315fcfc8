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

#include "bisim/workload.hpp"

#include <algorithm>
#include <cmath>

#include "bisim/errors.hpp"

namespace bisim {

std::string to_string(ProfileName p) {
  switch (p) {
    case ProfileName::DbQuery:
      return "DB_QUERY";
    case ProfileName::HttpPage:
      return "HTTP_PAGE";
    case ProfileName::OlapView:
      return "OLAP_VIEW";
    case ProfileName::EtlBatch:
      return "ETL_BATCH";
  }
  return "UNKNOWN";
}

ProfileName profile_name_from_string(const std::string& s) {
  if (s == "DB_QUERY") return ProfileName::DbQuery;
  if (s == "HTTP_PAGE") return ProfileName::HttpPage;
  if (s == "OLAP_VIEW") return ProfileName::OlapView;
  if (s == "ETL_BATCH") return ProfileName::EtlBatch;
  throw ParseError("unknown traffic profile: " + s);
}

std::string response_series_name(ProfileName p) {
  switch (p) {
    case ProfileName::DbQuery:
      return "db_query_response";
    case ProfileName::HttpPage:
      return "http_object_response";
    case ProfileName::OlapView:
      return "olap_view_response";
    case ProfileName::EtlBatch:
      return "etl_batch_response";
  }
  return "response";
}

void TrafficProfile::validate() const {
  try {
    interarrival.validate();
    request_bytes.validate();
    response_bytes.validate();
    requests_per_session.validate();
    think_time.validate();
  } catch (const InvalidDistributionParam& e) {
    throw ValidationError("profile " + to_string(name) + ": " + e.what());
  }
  if (!is_application_role(target_role)) {
    throw ValidationError("profile " + to_string(name) + ": target_role " +
                          to_string(target_role) + " is not an application role");
  }
}

std::vector<TrafficProfile> default_profiles(const CalibrationParams& p) {
  std::vector<TrafficProfile> profiles;

  TrafficProfile db;
  db.name = ProfileName::DbQuery;
  db.target_role = ServiceRole::DwDm;
  db.interarrival = Distribution::exponential(1.0 / p.db_session_interarrival_s);
  db.request_bytes = Distribution::constant(p.db_request_bytes);
  db.response_bytes = Distribution::constant(p.db_response_bytes);
  db.requests_per_session = Distribution::constant(p.db_requests_per_session);
  db.think_time = Distribution::exponential(1.0 / p.db_think_time_s);
  profiles.push_back(db);

  TrafficProfile http;
  http.name = ProfileName::HttpPage;
  http.target_role = ServiceRole::OlapDashboards;
  http.interarrival = Distribution::exponential(1.0 / p.http_session_interarrival_s);
  http.request_bytes = Distribution::constant(p.http_request_bytes);
  http.response_bytes = Distribution::constant(p.http_response_bytes);
  http.requests_per_session = Distribution::constant(p.http_requests_per_session);
  http.think_time = Distribution::exponential(1.0 / p.http_think_time_s);
  profiles.push_back(http);

  // Defined for completeness; off in the reference comparison.
  TrafficProfile olap;
  olap.name = ProfileName::OlapView;
  olap.target_role = ServiceRole::OlapViews;
  olap.interarrival = Distribution::exponential(1.0 / (2.0 * p.http_session_interarrival_s));
  olap.request_bytes = Distribution::constant(p.http_request_bytes);
  olap.response_bytes = Distribution::constant(4.0 * p.http_response_bytes);
  olap.requests_per_session = Distribution::constant(2.0);
  olap.think_time = Distribution::exponential(1.0 / p.http_think_time_s);
  olap.enabled = false;
  profiles.push_back(olap);

  TrafficProfile etl;
  etl.name = ProfileName::EtlBatch;
  etl.target_role = ServiceRole::DwDm;
  etl.interarrival = Distribution::exponential(1.0 / (10.0 * p.db_session_interarrival_s));
  etl.request_bytes = Distribution::constant(20.0 * p.db_request_bytes);
  etl.response_bytes = Distribution::constant(p.db_request_bytes);
  etl.requests_per_session = Distribution::constant(1.0);
  etl.think_time = Distribution::constant(0.0);
  etl.enabled = false;
  profiles.push_back(etl);

  return profiles;
}

std::vector<SessionStart> generate_sessions(const std::vector<TrafficProfile>& profiles,
                                            const std::vector<std::string>& clients,
                                            SimTime horizon, std::uint64_t master_seed) {
  if (!(horizon > 0.0)) throw InvalidHorizon("horizon must be > 0");

  std::vector<SessionStart> schedule;
  for (const TrafficProfile& profile : profiles) {
    if (!profile.enabled) continue;
    profile.validate();
    for (const std::string& client : clients) {
      RngStream stream(master_seed, "arrivals:" + to_string(profile.name) + ":" + client);
      SimTime t = 0.0;
      while (true) {
        t += draw(stream, profile.interarrival);
        if (!(t < horizon)) break;
        schedule.push_back({t, client, profile.name});
      }
    }
  }
  std::stable_sort(schedule.begin(), schedule.end(), [](const SessionStart& a, const SessionStart& b) {
    if (a.at != b.at) return a.at < b.at;
    if (a.client != b.client) return a.client < b.client;
    return static_cast<int>(a.profile) < static_cast<int>(b.profile);
  });
  return schedule;
}

Session::Session(std::uint64_t id, std::string client, const TrafficProfile& profile, SimTime start,
                 RngStream stream)
    : id_(id), client_(std::move(client)), profile_(&profile), start_(start),
      stream_(std::move(stream)) {
  double n = draw(stream_, profile.requests_per_session);
  planned_requests_ = n <= 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(std::ceil(n)));
}

std::optional<Request> Session::next_request(SimTime now, std::uint64_t request_id) {
  if (issued_ >= planned_requests_) return std::nullopt;
  ++issued_;
  Request r;
  r.id = request_id;
  r.session_id = id_;
  r.issued_at = now;
  r.size_bytes = std::max(1.0, draw(stream_, profile_->request_bytes));
  r.response_size_bytes = std::max(1.0, draw(stream_, profile_->response_bytes));
  return r;
}

double Session::draw_think_time() {
  return std::max(0.0, draw(stream_, profile_->think_time));
}

}  // namespace bisim
