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

#include "bisim/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bisim/errors.hpp"
#include "bisim/security.hpp"

using nlohmann::ordered_json;

namespace bisim {

namespace {

// One visitation point for every calibration field: JSON I/O and the sweep
// command address fields by these names.
template <class Params, class Fn>
void visit_calibration(Params& p, Fn&& f) {
  f("client_count", p.client_count);
  f("olap_count", p.olap_count);
  f("db_array_count", p.db_array_count);
  f("core_switch_count", p.core_switch_count);
  f("generic_security_count", p.generic_security_count);
  f("client_rate", p.client_rate);
  f("cloud_switch_rate", p.cloud_switch_rate);
  f("core_switch_rate", p.core_switch_rate);
  f("firewall_rate", p.firewall_rate);
  f("utm_switch_rate", p.utm_switch_rate);
  f("rdbms_rate", p.rdbms_rate);
  f("ldap_rate", p.ldap_rate);
  f("monitor_rate", p.monitor_rate);
  f("olap_rate", p.olap_rate);
  f("db_rate", p.db_rate);
  f("dmz_queue_capacity", p.dmz_queue_capacity);
  f("cloud_queue_capacity", p.cloud_queue_capacity);
  f("client_queue_capacity", p.client_queue_capacity);
  f("extranet_bandwidth_bps", p.extranet_bandwidth_bps);
  f("dmz_bandwidth_bps", p.dmz_bandwidth_bps);
  f("cloud_bandwidth_bps", p.cloud_bandwidth_bps);
  f("link_delay_s", p.link_delay_s);
  f("mss_bytes", p.mss_bytes);
  f("window_segments", p.window_segments);
  f("rto_s", p.rto_s);
  f("rto_backoff", p.rto_backoff);
  f("max_attempts", p.max_attempts);
  f("firewall_request_cost", p.firewall_request_cost);
  f("firewall_session_cost", p.firewall_session_cost);
  f("ldap_session_cost", p.ldap_session_cost);
  f("rdbms_rules_request_cost", p.rdbms_rules_request_cost);
  f("monitor_byte_cost", p.monitor_byte_cost);
  f("idps_request_cost", p.idps_request_cost);
  f("encryption_request_cost", p.encryption_request_cost);
  f("encryption_added_bytes", p.encryption_added_bytes);
  f("db_session_interarrival_s", p.db_session_interarrival_s);
  f("db_requests_per_session", p.db_requests_per_session);
  f("db_request_bytes", p.db_request_bytes);
  f("db_response_bytes", p.db_response_bytes);
  f("db_think_time_s", p.db_think_time_s);
  f("http_session_interarrival_s", p.http_session_interarrival_s);
  f("http_requests_per_session", p.http_requests_per_session);
  f("http_request_bytes", p.http_request_bytes);
  f("http_response_bytes", p.http_response_bytes);
  f("http_think_time_s", p.http_think_time_s);
}

ordered_json calibration_to_json(const CalibrationParams& p) {
  ordered_json j;
  visit_calibration(p, [&](const char* name, const auto& value) { j[name] = value; });
  return j;
}

CalibrationParams calibration_from_json(const ordered_json& j) {
  CalibrationParams p;
  std::set<std::string> known;
  visit_calibration(p, [&](const char* name, auto& value) {
    known.insert(name);
    auto it = j.find(name);
    if (it == j.end()) return;
    if (!it->is_number()) {
      throw ValidationError(std::string("calibration.") + name + ": expected a number");
    }
    using T = std::decay_t<decltype(value)>;
    value = it->get<T>();
  });
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ValidationError("calibration." + key + ": unknown field");
  }
  return p;
}

ordered_json distribution_to_json(const Distribution& d) {
  ordered_json j;
  j["kind"] = to_string(d.kind);
  switch (d.kind) {
    case Distribution::Kind::Constant:
      j["value"] = d.p0;
      break;
    case Distribution::Kind::Exponential:
      j["rate"] = d.p0;
      break;
    case Distribution::Kind::Uniform:
      j["a"] = d.p0;
      j["b"] = d.p1;
      break;
    case Distribution::Kind::Lognormal:
      j["mu"] = d.p0;
      j["sigma"] = d.p1;
      break;
  }
  return j;
}

Distribution distribution_from_json(const ordered_json& j, const std::string& field) {
  try {
    auto kind = distribution_kind_from_string(j.at("kind").get<std::string>());
    Distribution d;
    d.kind = kind;
    switch (kind) {
      case Distribution::Kind::Constant:
        d.p0 = j.at("value").get<double>();
        break;
      case Distribution::Kind::Exponential:
        d.p0 = j.at("rate").get<double>();
        break;
      case Distribution::Kind::Uniform:
        d.p0 = j.at("a").get<double>();
        d.p1 = j.at("b").get<double>();
        break;
      case Distribution::Kind::Lognormal:
        d.p0 = j.at("mu").get<double>();
        d.p1 = j.at("sigma").get<double>();
        break;
    }
    d.validate();
    return d;
  } catch (const ordered_json::exception& e) {
    throw ValidationError(field + ": " + e.what());
  } catch (const InvalidDistributionParam& e) {
    throw ValidationError(field + ": " + e.what());
  }
}

ordered_json profile_to_json(const TrafficProfile& p) {
  ordered_json j;
  j["name"] = to_string(p.name);
  j["target_role"] = to_string(p.target_role);
  j["enabled"] = p.enabled;
  j["interarrival"] = distribution_to_json(p.interarrival);
  j["request_bytes"] = distribution_to_json(p.request_bytes);
  j["response_bytes"] = distribution_to_json(p.response_bytes);
  j["requests_per_session"] = distribution_to_json(p.requests_per_session);
  j["think_time"] = distribution_to_json(p.think_time);
  return j;
}

TrafficProfile profile_from_json(const ordered_json& j) {
  try {
    TrafficProfile p;
    p.name = profile_name_from_string(j.at("name").get<std::string>());
    std::string field = "profiles." + to_string(p.name);
    p.target_role = service_role_from_string(j.at("target_role").get<std::string>());
    p.enabled = j.value("enabled", true);
    p.interarrival = distribution_from_json(j.at("interarrival"), field + ".interarrival");
    p.request_bytes = distribution_from_json(j.at("request_bytes"), field + ".request_bytes");
    p.response_bytes = distribution_from_json(j.at("response_bytes"), field + ".response_bytes");
    p.requests_per_session =
        distribution_from_json(j.at("requests_per_session"), field + ".requests_per_session");
    p.think_time = distribution_from_json(j.at("think_time"), field + ".think_time");
    return p;
  } catch (const ordered_json::exception& e) {
    throw ValidationError(std::string("profiles: ") + e.what());
  }
}

ordered_json rule_to_json(const ForwardingRule& r) {
  ordered_json j;
  ordered_json match = ordered_json::object();
  if (r.match.zone) match["zone"] = to_string(*r.match.zone);
  if (r.match.role) match["role"] = to_string(*r.match.role);
  if (r.match.node_id) match["node"] = *r.match.node_id;
  j["match"] = std::move(match);
  j["next_role"] = to_string(r.next_role);
  return j;
}

ForwardingRule rule_from_json(const ordered_json& j) {
  try {
    ForwardingRule r;
    const auto& match = j.at("match");
    if (match.contains("zone")) r.match.zone = zone_from_string(match.at("zone").get<std::string>());
    if (match.contains("role")) {
      r.match.role = service_role_from_string(match.at("role").get<std::string>());
    }
    if (match.contains("node")) r.match.node_id = match.at("node").get<std::string>();
    r.next_role = service_role_from_string(j.at("next_role").get<std::string>());
    return r;
  } catch (const ordered_json::exception& e) {
    throw ValidationError(std::string("rules: ") + e.what());
  }
}

}  // namespace

std::vector<TrafficProfile> ScenarioConfig::effective_profiles() const {
  if (profiles.empty()) return default_profiles(calibration);
  return profiles;
}

void ScenarioConfig::validate() const {
  if (name.empty()) throw ValidationError("name: must not be empty");
  if (horizon_s < 0.0) throw ValidationError("horizon_s: must be >= 0");
  if (warmup_fraction < 0.0 || warmup_fraction >= 1.0) {
    throw ValidationError("warmup_fraction: must be in [0, 1)");
  }
  if (measurement_windows < 1) throw ValidationError("measurement_windows: must be >= 1");
  try {
    calibration.validate();
  } catch (const InvalidCalibration& e) {
    throw ValidationError(e.what());
  }
  for (const TrafficProfile& p : effective_profiles()) p.validate();
  if (model == Model::Custom && custom_rules.empty()) {
    throw ValidationError("rules: custom model requires a forwarding rule list");
  }
}

ordered_json ScenarioConfig::to_json() const {
  ordered_json j;
  j["format_version"] = kScenarioFormatVersion;
  j["name"] = name;
  j["model"] = to_string(model);
  j["seed"] = seed;
  j["horizon_s"] = horizon_s;
  j["warmup_fraction"] = warmup_fraction;
  j["measurement_windows"] = measurement_windows;
  j["export_raw_samples"] = export_raw_samples;
  j["calibration"] = calibration_to_json(calibration);
  ordered_json profs = ordered_json::array();
  for (const TrafficProfile& p : profiles) profs.push_back(profile_to_json(p));
  j["profiles"] = std::move(profs);
  ordered_json rules = ordered_json::array();
  for (const ForwardingRule& r : custom_rules) rules.push_back(rule_to_json(r));
  j["rules"] = std::move(rules);
  return j;
}

ScenarioConfig ScenarioConfig::from_json(const ordered_json& j) {
  try {
    ScenarioConfig cfg;
    if (j.contains("format_version")) {
      int version = j.at("format_version").get<int>();
      if (version != kScenarioFormatVersion) {
        throw ValidationError("format_version: unsupported version " + std::to_string(version));
      }
    }
    cfg.name = j.value("name", cfg.name);
    if (j.contains("model")) cfg.model = model_from_string(j.at("model").get<std::string>());
    cfg.seed = j.value("seed", cfg.seed);
    cfg.horizon_s = j.value("horizon_s", cfg.horizon_s);
    cfg.warmup_fraction = j.value("warmup_fraction", cfg.warmup_fraction);
    cfg.measurement_windows = j.value("measurement_windows", cfg.measurement_windows);
    cfg.export_raw_samples = j.value("export_raw_samples", cfg.export_raw_samples);
    if (j.contains("calibration")) cfg.calibration = calibration_from_json(j.at("calibration"));
    if (j.contains("profiles")) {
      for (const auto& pj : j.at("profiles")) cfg.profiles.push_back(profile_from_json(pj));
    }
    if (j.contains("rules")) {
      for (const auto& rj : j.at("rules")) cfg.custom_rules.push_back(rule_from_json(rj));
    }
    return cfg;
  } catch (const ordered_json::exception& e) {
    throw ValidationError(std::string("scenario: ") + e.what());
  }
}

ScenarioConfig default_scenario(Model m) {
  ScenarioConfig cfg;
  cfg.model = m;
  cfg.name = m == Model::Custom ? "custom" : "model_" + [&] {
    std::string s = to_string(m);
    for (char& c : s) c = static_cast<char>(std::tolower(c));
    return s;
  }();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ordered_json j;
  try {
    j = ordered_json::parse(buf.str());
  } catch (const ordered_json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  ScenarioConfig cfg = ScenarioConfig::from_json(j);
  cfg.validate();
  return cfg;
}

void save_scenario(const ScenarioConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write scenario file: " + path);
  out << cfg.to_json().dump(2) << "\n";
}

std::string CalibrationCheck::to_text() const {
  std::ostringstream out;
  auto line = [&](const char* name, bool ok) { out << (ok ? "  [ok]   " : "  [FAIL] ") << name << "\n"; };
  line("model B stable (utilization < 0.9, zero drops)", model_b_stable);
  line("model A DMZ offered utilization > 1", model_a_bottleneck);
  line("model A mean db_query_response > 20 s", model_a_db_response);
  line("model A mean http_object_response in [1 s, 3 s]", model_a_http_response);
  line("model A mean tcp_segment_delay within 50% of 4 s", model_a_segment_delay);
  line("model A retransmissions > 1000 in >= 2 windows", model_a_retransmissions);
  return out.str();
}

CalibrationCheck evaluate_calibration(const CalibrationParams& params, std::uint64_t seed) {
  CalibrationCheck check;

  ScenarioConfig b = default_scenario(Model::B);
  b.calibration = params;
  b.seed = seed;
  MetricsReport rb = run_scenario(b).report;
  bool stable = rb.counters.drops == 0;
  for (const auto& [id, usage] : rb.nodes) {
    if (usage.utilization(rb.horizon) >= 0.9) stable = false;
  }
  check.model_b_stable = stable;

  ScenarioConfig a = default_scenario(Model::A);
  a.calibration = params;
  a.seed = seed;
  MetricsReport ra = run_scenario(a).report;
  for (const auto& [id, usage] : ra.nodes) {
    if (usage.zone == "dmz" && usage.offered_utilization(ra.horizon) > 1.0) {
      check.model_a_bottleneck = true;
    }
  }
  const SeriesSummary* db = ra.find_series("db_query_response");
  const SeriesSummary* http = ra.find_series("http_object_response");
  const SeriesSummary* seg = ra.find_series("tcp_segment_delay");
  check.model_a_db_response = db && db->defined && db->mean > 20.0;
  check.model_a_http_response = http && http->defined && http->mean >= 1.0 && http->mean <= 3.0;
  check.model_a_segment_delay = seg && seg->defined && seg->mean >= 2.0 && seg->mean <= 6.0;
  check.model_a_retransmissions = ra.windows_with_retransmissions_above(1000) >= 2;
  return check;
}

std::vector<CalibrationParams> calibration_grid() {
  std::vector<CalibrationParams> cells;
  const int client_counts[] = {48, 64, 96};
  const double dmz_rate_scales[] = {1.0, 0.8, 1.25};
  for (int clients : client_counts) {
    for (double scale : dmz_rate_scales) {
      CalibrationParams p;
      p.client_count = clients;
      p.firewall_rate *= scale;
      p.utm_switch_rate *= scale;
      p.rdbms_rate *= scale;
      p.ldap_rate *= scale;
      p.monitor_rate *= scale;
      cells.push_back(p);
    }
  }
  return cells;
}

CalibrationParams calibrate_reference(const std::vector<CalibrationParams>& grid,
                                      std::uint64_t seed) {
  std::ostringstream failures;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CalibrationCheck check = evaluate_calibration(grid[i], seed);
    if (check.all()) return grid[i];
    failures << "cell " << i << " (clients=" << grid[i].client_count
             << ", rdbms_rate=" << grid[i].rdbms_rate << "):\n"
             << check.to_text();
  }
  throw CalibrationInfeasible("no grid cell meets every reference target:\n" + failures.str());
}

CalibrationParams calibrate_reference() {
  return calibrate_reference(calibration_grid(), 42);
}

}  // namespace bisim
