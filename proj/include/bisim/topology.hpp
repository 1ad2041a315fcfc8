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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bisim/calibration.hpp"

namespace bisim {

enum class ServiceRole {
  OlapDashboards,
  OlapViews,
  DwDm,
  BiDwDm,
  BiApplication,
  BiSecurityUtm,
  ZoneFirewall,
  UtmSwitch,
  RdbmsSecurityMonitor,
  Ldap,
  UtmDbActivityMonitor,
  Idps,
  CloudSwitch,
  Client,
};

enum class NodeKind { Client, Switch, Firewall, Server };
enum class Zone { Extranet, Dmz, BiCloud };
enum class ServiceTimeKind { Deterministic, Exponential };

std::string to_string(ServiceRole r);
std::string to_string(NodeKind k);
std::string to_string(Zone z);
ServiceRole service_role_from_string(const std::string& s);
NodeKind node_kind_from_string(const std::string& s);
Zone zone_from_string(const std::string& s);

/// Roles a session can target (the served applications).
bool is_application_role(ServiceRole r);
/// Roles that mark a security function, embedded or standalone.
bool is_security_role(ServiceRole r);

struct Node {
  std::string id;
  NodeKind kind = NodeKind::Server;
  std::set<ServiceRole> roles;
  double service_rate = 1.0;  // segments per second
  int queue_capacity = 1;     // segments held, including the one in service
  Zone zone = Zone::BiCloud;
  ServiceTimeKind service_time = ServiceTimeKind::Exponential;

  bool has_role(ServiceRole r) const { return roles.count(r) > 0; }
  bool operator==(const Node&) const = default;
};

struct Link {
  std::string a;
  std::string b;
  double bandwidth_bps = 1e9;
  double propagation_s = 0.0;

  bool operator==(const Link&) const = default;
};

class Topology {
 public:
  std::string name;

  void add_node(Node n);
  void add_link(Link l);

  const Node* find(const std::string& id) const;
  const Node& at(const std::string& id) const;  // throws ValidationError if absent
  bool has_node(const std::string& id) const { return find(id) != nullptr; }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }

  /// Neighbor ids in ascending order.
  std::vector<std::string> neighbors(const std::string& id) const;
  const Link* link_between(const std::string& a, const std::string& b) const;

  std::vector<std::string> nodes_with_role(ServiceRole r) const;
  std::vector<std::string> nodes_in_zone(Zone z) const;

  bool operator==(const Topology&) const = default;

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, std::vector<std::string>> adjacency_;
};

struct ValidationFinding {
  std::string kind;     // "no_nodes", "duplicate_id", "dangling_link", ...
  std::string subject;  // node or link the finding refers to
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationFinding> findings;
  bool clean() const { return findings.empty(); }
  std::string to_text() const;
};

/// Structural checks: duplicate ids, dangling endpoints, disconnected
/// components, nonpositive rates, and the zone policy (when a DMZ exists,
/// clients must not link straight into the BI cloud).
ValidationReport validate(const Topology& t);

/// Centralized security: client population behind a zone firewall, a DMZ
/// with the UTM switch and security servers, and the BI cloud arrays
/// (5 OLAP on cloud switch 2, 4+4 database servers on switches 1 and 3,
/// a routing-switch mesh).
Topology build_model_a(const CalibrationParams& params);

/// Distributed security: no DMZ; clients attach straight to the cloud
/// switches and every BI server also carries the embedded security role.
Topology build_model_b(const CalibrationParams& params);

/// Hybrid: network/transport/session controls stay in a slim DMZ (firewall
/// plus UTM switch); application-layer controls are embedded on the servers.
Topology build_model_c_hybrid(const CalibrationParams& params);

Topology build_model(Model m, const CalibrationParams& params);

}  // namespace bisim
