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

#include "bisim/topology.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <sstream>

#include "bisim/errors.hpp"

namespace bisim {

std::string to_string(Model m) {
  switch (m) {
    case Model::A:
      return "A";
    case Model::B:
      return "B";
    case Model::C:
      return "C";
    case Model::Custom:
      return "custom";
  }
  return "unknown";
}

Model model_from_string(const std::string& s) {
  if (s == "A" || s == "a") return Model::A;
  if (s == "B" || s == "b") return Model::B;
  if (s == "C" || s == "c") return Model::C;
  if (s == "custom") return Model::Custom;
  throw ParseError("unknown model: " + s);
}

std::string to_string(ServiceRole r) {
  switch (r) {
    case ServiceRole::OlapDashboards:
      return "OLAP_DASHBOARDS";
    case ServiceRole::OlapViews:
      return "OLAP_VIEWS";
    case ServiceRole::DwDm:
      return "DW_DM";
    case ServiceRole::BiDwDm:
      return "BI_DW_DM";
    case ServiceRole::BiApplication:
      return "BI_APPLICATION";
    case ServiceRole::BiSecurityUtm:
      return "BI_SECURITY_UTM";
    case ServiceRole::ZoneFirewall:
      return "ZONE_FIREWALL";
    case ServiceRole::UtmSwitch:
      return "UTM_SWITCH";
    case ServiceRole::RdbmsSecurityMonitor:
      return "RDBMS_SECURITY_MONITOR";
    case ServiceRole::Ldap:
      return "LDAP";
    case ServiceRole::UtmDbActivityMonitor:
      return "UTM_DB_ACT_MON";
    case ServiceRole::Idps:
      return "IDPS";
    case ServiceRole::CloudSwitch:
      return "CLOUD_SWITCH";
    case ServiceRole::Client:
      return "CLIENT";
  }
  return "UNKNOWN";
}

ServiceRole service_role_from_string(const std::string& s) {
  static const std::map<std::string, ServiceRole> table = {
      {"OLAP_DASHBOARDS", ServiceRole::OlapDashboards},
      {"OLAP_VIEWS", ServiceRole::OlapViews},
      {"DW_DM", ServiceRole::DwDm},
      {"BI_DW_DM", ServiceRole::BiDwDm},
      {"BI_APPLICATION", ServiceRole::BiApplication},
      {"BI_SECURITY_UTM", ServiceRole::BiSecurityUtm},
      {"ZONE_FIREWALL", ServiceRole::ZoneFirewall},
      {"UTM_SWITCH", ServiceRole::UtmSwitch},
      {"RDBMS_SECURITY_MONITOR", ServiceRole::RdbmsSecurityMonitor},
      {"LDAP", ServiceRole::Ldap},
      {"UTM_DB_ACT_MON", ServiceRole::UtmDbActivityMonitor},
      {"IDPS", ServiceRole::Idps},
      {"CLOUD_SWITCH", ServiceRole::CloudSwitch},
      {"CLIENT", ServiceRole::Client},
  };
  auto it = table.find(s);
  if (it == table.end()) throw ParseError("unknown service role: " + s);
  return it->second;
}

std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Client:
      return "client";
    case NodeKind::Switch:
      return "switch";
    case NodeKind::Firewall:
      return "firewall";
    case NodeKind::Server:
      return "server";
  }
  return "unknown";
}

NodeKind node_kind_from_string(const std::string& s) {
  if (s == "client") return NodeKind::Client;
  if (s == "switch") return NodeKind::Switch;
  if (s == "firewall") return NodeKind::Firewall;
  if (s == "server") return NodeKind::Server;
  throw ParseError("unknown node kind: " + s);
}

std::string to_string(Zone z) {
  switch (z) {
    case Zone::Extranet:
      return "extranet";
    case Zone::Dmz:
      return "dmz";
    case Zone::BiCloud:
      return "bi_cloud";
  }
  return "unknown";
}

Zone zone_from_string(const std::string& s) {
  if (s == "extranet") return Zone::Extranet;
  if (s == "dmz") return Zone::Dmz;
  if (s == "bi_cloud") return Zone::BiCloud;
  throw ParseError("unknown zone: " + s);
}

bool is_application_role(ServiceRole r) {
  switch (r) {
    case ServiceRole::OlapDashboards:
    case ServiceRole::OlapViews:
    case ServiceRole::DwDm:
    case ServiceRole::BiDwDm:
    case ServiceRole::BiApplication:
      return true;
    default:
      return false;
  }
}

bool is_security_role(ServiceRole r) {
  switch (r) {
    case ServiceRole::BiSecurityUtm:
    case ServiceRole::ZoneFirewall:
    case ServiceRole::UtmSwitch:
    case ServiceRole::RdbmsSecurityMonitor:
    case ServiceRole::Ldap:
    case ServiceRole::UtmDbActivityMonitor:
    case ServiceRole::Idps:
      return true;
    default:
      return false;
  }
}

void Topology::add_node(Node n) {
  index_[n.id] = nodes_.size();
  adjacency_.emplace(n.id, std::vector<std::string>{});
  nodes_.push_back(std::move(n));
}

void Topology::add_link(Link l) {
  adjacency_[l.a].push_back(l.b);
  adjacency_[l.b].push_back(l.a);
  std::sort(adjacency_[l.a].begin(), adjacency_[l.a].end());
  std::sort(adjacency_[l.b].begin(), adjacency_[l.b].end());
  links_.push_back(std::move(l));
}

const Node* Topology::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return nullptr;
  return &nodes_[it->second];
}

const Node& Topology::at(const std::string& id) const {
  const Node* n = find(id);
  if (!n) throw ValidationError("no such node: " + id);
  return *n;
}

std::vector<std::string> Topology::neighbors(const std::string& id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) return {};
  return it->second;
}

const Link* Topology::link_between(const std::string& a, const std::string& b) const {
  for (const Link& l : links_) {
    if ((l.a == a && l.b == b) || (l.a == b && l.b == a)) return &l;
  }
  return nullptr;
}

std::vector<std::string> Topology::nodes_with_role(ServiceRole r) const {
  std::vector<std::string> out;
  for (const Node& n : nodes_) {
    if (n.has_role(r)) out.push_back(n.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> Topology::nodes_in_zone(Zone z) const {
  std::vector<std::string> out;
  for (const Node& n : nodes_) {
    if (n.zone == z) out.push_back(n.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  if (findings.empty()) {
    out << "ok: no findings\n";
    return out.str();
  }
  for (const auto& f : findings) {
    out << f.kind << " [" << f.subject << "]: " << f.message << "\n";
  }
  return out.str();
}

ValidationReport validate(const Topology& t) {
  ValidationReport report;
  auto add = [&](std::string kind, std::string subject, std::string message) {
    report.findings.push_back({std::move(kind), std::move(subject), std::move(message)});
  };

  if (t.nodes().empty()) {
    add("no_nodes", t.name, "topology has no nodes");
    return report;
  }

  std::map<std::string, int> seen;
  for (const Node& n : t.nodes()) {
    if (++seen[n.id] == 2) add("duplicate_id", n.id, "node id appears more than once");
    if (n.kind != NodeKind::Client && !(n.service_rate > 0.0)) {
      add("invalid_rate", n.id, "service_rate must be > 0");
    }
    if (n.queue_capacity < 0) add("invalid_capacity", n.id, "queue_capacity must be >= 0");
    if (n.kind == NodeKind::Server && n.roles.empty()) {
      add("missing_role", n.id, "server carries no role");
    }
  }

  for (const Link& l : t.links()) {
    std::string subject = l.a + "<->" + l.b;
    if (l.a == l.b) add("self_link", subject, "link endpoints are identical");
    if (!t.has_node(l.a) || !t.has_node(l.b)) {
      add("dangling_link", subject, "link endpoint does not exist");
      continue;
    }
    if (!(l.bandwidth_bps > 0.0)) add("invalid_bandwidth", subject, "bandwidth must be > 0");
    if (l.propagation_s < 0.0) add("invalid_delay", subject, "propagation delay must be >= 0");
  }

  // Connectivity sweep from the first node.
  std::set<std::string> visited;
  std::queue<std::string> frontier;
  frontier.push(t.nodes().front().id);
  visited.insert(t.nodes().front().id);
  while (!frontier.empty()) {
    std::string cur = frontier.front();
    frontier.pop();
    for (const std::string& next : t.neighbors(cur)) {
      if (visited.insert(next).second) frontier.push(next);
    }
  }
  for (const Node& n : t.nodes()) {
    if (!visited.count(n.id)) add("disconnected", n.id, "node unreachable from " + t.nodes().front().id);
  }

  // Zone policy: with a DMZ present, extranet clients must enter through it.
  bool has_dmz = !t.nodes_in_zone(Zone::Dmz).empty();
  if (has_dmz) {
    for (const Link& l : t.links()) {
      const Node* na = t.find(l.a);
      const Node* nb = t.find(l.b);
      if (!na || !nb) continue;
      const Node* client = nullptr;
      const Node* other = nullptr;
      if (na->kind == NodeKind::Client && na->zone == Zone::Extranet) client = na, other = nb;
      if (nb->kind == NodeKind::Client && nb->zone == Zone::Extranet) client = nb, other = na;
      if (client && other && other->zone == Zone::BiCloud) {
        add("zone_policy_violation", l.a + "<->" + l.b,
            "extranet client linked directly into bi_cloud");
      }
    }
  }

  return report;
}

namespace {

std::string seq_id(const char* prefix, int i) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%03d", prefix, i);
  return buf;
}

Node make_client(const std::string& id, const CalibrationParams& p) {
  Node n;
  n.id = id;
  n.kind = NodeKind::Client;
  n.roles = {ServiceRole::Client};
  n.service_rate = p.client_rate;
  n.queue_capacity = p.client_queue_capacity;
  n.zone = Zone::Extranet;
  n.service_time = ServiceTimeKind::Deterministic;
  return n;
}

Node make_switch(const std::string& id, ServiceRole role, Zone zone, double rate, int capacity) {
  Node n;
  n.id = id;
  n.kind = NodeKind::Switch;
  n.roles = {role};
  n.service_rate = rate;
  n.queue_capacity = capacity;
  n.zone = zone;
  n.service_time = ServiceTimeKind::Deterministic;
  return n;
}

Node make_server(const std::string& id, std::set<ServiceRole> roles, Zone zone, double rate,
                 int capacity) {
  Node n;
  n.id = id;
  n.kind = NodeKind::Server;
  n.roles = std::move(roles);
  n.service_rate = rate;
  n.queue_capacity = capacity;
  n.zone = zone;
  n.service_time = ServiceTimeKind::Exponential;
  return n;
}

// BI cloud arrays shared by all three architectures: OLAP on cloud switch 2,
// the two database arrays on cloud switches 1 and 3 (records split between
// two hardware clusters), and the routing-switch mesh.
void add_bi_cloud(Topology& t, const CalibrationParams& p) {
  for (int i = 1; i <= 3; ++i) {
    t.add_node(make_switch("cloud_switch_" + std::to_string(i), ServiceRole::CloudSwitch,
                           Zone::BiCloud, p.cloud_switch_rate, p.cloud_queue_capacity));
  }
  for (int i = 1; i <= p.core_switch_count; ++i) {
    t.add_node(make_switch("core_switch_" + std::to_string(i), ServiceRole::CloudSwitch,
                           Zone::BiCloud, p.core_switch_rate, p.cloud_queue_capacity));
  }
  for (int i = 1; i <= p.olap_count; ++i) {
    t.add_node(make_server("olap_" + std::to_string(i),
                           {ServiceRole::OlapDashboards, ServiceRole::OlapViews}, Zone::BiCloud,
                           p.olap_rate, p.cloud_queue_capacity));
  }
  for (int i = 1; i <= p.db_array_count; ++i) {
    t.add_node(make_server("db_a_" + std::to_string(i), {ServiceRole::DwDm}, Zone::BiCloud,
                           p.db_rate, p.cloud_queue_capacity));
  }
  for (int i = 1; i <= p.db_array_count; ++i) {
    t.add_node(make_server("db_b_" + std::to_string(i), {ServiceRole::DwDm}, Zone::BiCloud,
                           p.db_rate, p.cloud_queue_capacity));
  }

  Link cloud{.a = "", .b = "", .bandwidth_bps = p.cloud_bandwidth_bps,
             .propagation_s = p.link_delay_s};
  for (int c = 1; c <= 3; ++c) {
    for (int k = 1; k <= p.core_switch_count; ++k) {
      Link l = cloud;
      l.a = "cloud_switch_" + std::to_string(c);
      l.b = "core_switch_" + std::to_string(k);
      t.add_link(l);
    }
  }
  for (int i = 1; i <= p.olap_count; ++i) {
    Link l = cloud;
    l.a = "cloud_switch_2";
    l.b = "olap_" + std::to_string(i);
    t.add_link(l);
  }
  for (int i = 1; i <= p.db_array_count; ++i) {
    Link l = cloud;
    l.a = "cloud_switch_1";
    l.b = "db_a_" + std::to_string(i);
    t.add_link(l);
  }
  for (int i = 1; i <= p.db_array_count; ++i) {
    Link l = cloud;
    l.a = "cloud_switch_3";
    l.b = "db_b_" + std::to_string(i);
    t.add_link(l);
  }
}

void add_clients(Topology& t, const CalibrationParams& p) {
  for (int i = 1; i <= p.client_count; ++i) {
    t.add_node(make_client(seq_id("client_", i), p));
  }
}

}  // namespace

void CalibrationParams::validate() const {
  auto positive = [](double v, const char* field) {
    if (!(v > 0.0)) throw InvalidCalibration(std::string("calibration.") + field + ": must be > 0");
  };
  auto nonneg = [](double v, const char* field) {
    if (v < 0.0) throw InvalidCalibration(std::string("calibration.") + field + ": must be >= 0");
  };
  if (client_count < 0) throw InvalidCalibration("calibration.client_count: must be >= 0");
  if (olap_count < 1) throw InvalidCalibration("calibration.olap_count: must be >= 1");
  if (db_array_count < 1) throw InvalidCalibration("calibration.db_array_count: must be >= 1");
  if (core_switch_count < 1) throw InvalidCalibration("calibration.core_switch_count: must be >= 1");
  if (generic_security_count < 0) {
    throw InvalidCalibration("calibration.generic_security_count: must be >= 0");
  }
  positive(client_rate, "client_rate");
  positive(cloud_switch_rate, "cloud_switch_rate");
  positive(core_switch_rate, "core_switch_rate");
  positive(firewall_rate, "firewall_rate");
  positive(utm_switch_rate, "utm_switch_rate");
  positive(rdbms_rate, "rdbms_rate");
  positive(ldap_rate, "ldap_rate");
  positive(monitor_rate, "monitor_rate");
  positive(olap_rate, "olap_rate");
  positive(db_rate, "db_rate");
  if (dmz_queue_capacity < 1) throw InvalidCalibration("calibration.dmz_queue_capacity: must be >= 1");
  if (cloud_queue_capacity < 1) {
    throw InvalidCalibration("calibration.cloud_queue_capacity: must be >= 1");
  }
  if (client_queue_capacity < 1) {
    throw InvalidCalibration("calibration.client_queue_capacity: must be >= 1");
  }
  positive(extranet_bandwidth_bps, "extranet_bandwidth_bps");
  positive(dmz_bandwidth_bps, "dmz_bandwidth_bps");
  positive(cloud_bandwidth_bps, "cloud_bandwidth_bps");
  nonneg(link_delay_s, "link_delay_s");
  positive(mss_bytes, "mss_bytes");
  if (window_segments < 1) throw InvalidCalibration("calibration.window_segments: must be >= 1");
  positive(rto_s, "rto_s");
  if (!(rto_backoff >= 1.0)) throw InvalidCalibration("calibration.rto_backoff: must be >= 1");
  if (max_attempts < 1) throw InvalidCalibration("calibration.max_attempts: must be >= 1");
  nonneg(firewall_request_cost, "firewall_request_cost");
  nonneg(firewall_session_cost, "firewall_session_cost");
  nonneg(ldap_session_cost, "ldap_session_cost");
  nonneg(rdbms_rules_request_cost, "rdbms_rules_request_cost");
  nonneg(monitor_byte_cost, "monitor_byte_cost");
  nonneg(idps_request_cost, "idps_request_cost");
  nonneg(encryption_request_cost, "encryption_request_cost");
  nonneg(encryption_added_bytes, "encryption_added_bytes");
  positive(db_session_interarrival_s, "db_session_interarrival_s");
  positive(db_requests_per_session, "db_requests_per_session");
  positive(db_request_bytes, "db_request_bytes");
  positive(db_response_bytes, "db_response_bytes");
  nonneg(db_think_time_s, "db_think_time_s");
  positive(http_session_interarrival_s, "http_session_interarrival_s");
  positive(http_requests_per_session, "http_requests_per_session");
  positive(http_request_bytes, "http_request_bytes");
  positive(http_response_bytes, "http_response_bytes");
  nonneg(http_think_time_s, "http_think_time_s");
}

Topology build_model_a(const CalibrationParams& p) {
  p.validate();
  Topology t;
  t.name = "model_a";

  add_clients(t, p);

  t.add_node([&] {
    Node n;
    n.id = "fw_zone";
    n.kind = NodeKind::Firewall;
    n.roles = {ServiceRole::ZoneFirewall};
    n.service_rate = p.firewall_rate;
    n.queue_capacity = p.dmz_queue_capacity;
    n.zone = Zone::Dmz;
    n.service_time = ServiceTimeKind::Deterministic;
    return n;
  }());
  t.add_node(make_switch("utm_switch", ServiceRole::UtmSwitch, Zone::Dmz, p.utm_switch_rate,
                         p.dmz_queue_capacity));
  t.add_node(make_server("rdbms_sec_mon", {ServiceRole::RdbmsSecurityMonitor}, Zone::Dmz,
                         p.rdbms_rate, p.dmz_queue_capacity));
  t.add_node(make_server("ldap", {ServiceRole::Ldap}, Zone::Dmz, p.ldap_rate,
                         p.dmz_queue_capacity));
  // The activity monitor taps the UTM switch; its queue is sized so the tap
  // itself never sheds load.
  t.add_node(make_server("utm_db_act_mon", {ServiceRole::UtmDbActivityMonitor}, Zone::Dmz,
                         p.monitor_rate, p.cloud_queue_capacity));
  for (int i = 1; i <= p.generic_security_count; ++i) {
    t.add_node(make_server("sec_srv_" + std::to_string(i), {ServiceRole::Idps}, Zone::Dmz,
                           p.rdbms_rate, p.dmz_queue_capacity));
  }

  add_bi_cloud(t, p);

  Link extranet{.a = "", .b = "", .bandwidth_bps = p.extranet_bandwidth_bps,
                .propagation_s = p.link_delay_s};
  for (int i = 1; i <= p.client_count; ++i) {
    Link l = extranet;
    l.a = seq_id("client_", i);
    l.b = "fw_zone";
    t.add_link(l);
  }

  Link dmz{.a = "", .b = "", .bandwidth_bps = p.dmz_bandwidth_bps, .propagation_s = p.link_delay_s};
  auto dmz_link = [&](const std::string& a, const std::string& b) {
    Link l = dmz;
    l.a = a;
    l.b = b;
    t.add_link(l);
  };
  dmz_link("fw_zone", "utm_switch");
  dmz_link("utm_switch", "rdbms_sec_mon");
  dmz_link("rdbms_sec_mon", "ldap");
  dmz_link("utm_switch", "utm_db_act_mon");
  for (int i = 1; i <= p.generic_security_count; ++i) {
    dmz_link("utm_switch", "sec_srv_" + std::to_string(i));
  }
  for (int c = 1; c <= 3; ++c) {
    dmz_link("ldap", "cloud_switch_" + std::to_string(c));
  }

  return t;
}

Topology build_model_b(const CalibrationParams& p) {
  p.validate();
  Topology t;
  t.name = "model_b";

  add_clients(t, p);
  add_bi_cloud(t, p);

  // Embedded security: every application server is also a security node.
  Topology out;
  out.name = t.name;
  for (Node n : t.nodes()) {
    if (n.kind == NodeKind::Server) {
      n.roles.insert(ServiceRole::BiSecurityUtm);
      if (n.has_role(ServiceRole::DwDm)) n.roles.insert(ServiceRole::BiDwDm);
      if (n.has_role(ServiceRole::OlapDashboards)) n.roles.insert(ServiceRole::BiApplication);
    }
    out.add_node(std::move(n));
  }
  for (const Link& l : t.links()) out.add_link(l);

  Link extranet{.a = "", .b = "", .bandwidth_bps = p.extranet_bandwidth_bps,
                .propagation_s = p.link_delay_s};
  for (int i = 1; i <= p.client_count; ++i) {
    for (int c = 1; c <= 3; ++c) {
      Link l = extranet;
      l.a = seq_id("client_", i);
      l.b = "cloud_switch_" + std::to_string(c);
      out.add_link(l);
    }
  }
  return out;
}

Topology build_model_c_hybrid(const CalibrationParams& p) {
  p.validate();
  // A hybrid needs at least one application-layer control to embed.
  if (!(p.rdbms_rules_request_cost > 0.0) && !(p.monitor_byte_cost > 0.0) &&
      !(p.idps_request_cost > 0.0)) {
    throw InvalidCalibration(
        "calibration: hybrid model requires at least one application-layer "
        "security service (rdbms_rules_request_cost, monitor_byte_cost or "
        "idps_request_cost)");
  }
  Topology t;
  t.name = "model_c";

  add_clients(t, p);

  t.add_node([&] {
    Node n;
    n.id = "fw_zone";
    n.kind = NodeKind::Firewall;
    n.roles = {ServiceRole::ZoneFirewall};
    n.service_rate = p.firewall_rate;
    n.queue_capacity = p.dmz_queue_capacity;
    n.zone = Zone::Dmz;
    n.service_time = ServiceTimeKind::Deterministic;
    return n;
  }());
  t.add_node(make_switch("utm_switch", ServiceRole::UtmSwitch, Zone::Dmz, p.utm_switch_rate,
                         p.dmz_queue_capacity));

  // BI cloud with application-layer security embedded on the servers.
  Topology cloud;
  add_bi_cloud(cloud, p);
  Topology out = std::move(t);
  for (Node n : cloud.nodes()) {
    if (n.kind == NodeKind::Server) n.roles.insert(ServiceRole::BiSecurityUtm);
    out.add_node(std::move(n));
  }
  for (const Link& l : cloud.links()) out.add_link(l);

  Link extranet{.a = "", .b = "", .bandwidth_bps = p.extranet_bandwidth_bps,
                .propagation_s = p.link_delay_s};
  for (int i = 1; i <= p.client_count; ++i) {
    Link l = extranet;
    l.a = seq_id("client_", i);
    l.b = "fw_zone";
    out.add_link(l);
  }
  Link dmz{.a = "fw_zone", .b = "utm_switch", .bandwidth_bps = p.dmz_bandwidth_bps,
           .propagation_s = p.link_delay_s};
  out.add_link(dmz);
  for (int c = 1; c <= 3; ++c) {
    Link l{.a = "utm_switch", .b = "cloud_switch_" + std::to_string(c),
           .bandwidth_bps = p.dmz_bandwidth_bps, .propagation_s = p.link_delay_s};
    out.add_link(l);
  }
  return out;
}

Topology build_model(Model m, const CalibrationParams& params) {
  switch (m) {
    case Model::A:
      return build_model_a(params);
    case Model::B:
      return build_model_b(params);
    case Model::C:
      return build_model_c_hybrid(params);
    case Model::Custom:
      throw ValidationError("custom model has no builder; supply a topology via rules/scenario");
  }
  throw ValidationError("unknown model");
}

}  // namespace bisim
