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
#include <set>
#include <string>
#include <vector>

#include "bisim/metrics.hpp"
#include "bisim/topology.hpp"

namespace bisim {

enum class SecurityKind {
  FirewallAdmission,
  LdapAuth,
  RdbmsEtlRules,
  DbActivityMonitor,
  IdpsInspection,
  SessionEncryption,
};

enum class OsiLayer { Network, Transport, Session, Presentation, Application };

std::string to_string(SecurityKind k);
std::string to_string(OsiLayer l);
SecurityKind security_kind_from_string(const std::string& s);

/// The layer a control belongs to: firewall at network, LDAP at session,
/// encryption at presentation, ETL rules / DB monitoring / IDPS at
/// application.
OsiLayer layer_of(SecurityKind k);

/// A security function modeled as admission plus processing cost. Fixed
/// costs are charged once per request (or once per session), the byte cost
/// per payload byte in both directions.
struct SecurityService {
  SecurityKind kind = SecurityKind::FirewallAdmission;
  OsiLayer layer = OsiLayer::Network;
  double per_request_cost = 0.0;
  double per_session_cost = 0.0;
  double per_byte_cost = 0.0;
  double added_bytes = 0.0;

  bool operator==(const SecurityService&) const = default;
};

struct SecurityCatalog {
  std::vector<SecurityService> services;

  const SecurityService* find(SecurityKind k) const;
  /// Extra request bytes added by the catalog (encryption overhead).
  double total_added_bytes() const;

  static SecurityCatalog from_params(const CalibrationParams& params);
  bool operator==(const SecurityCatalog&) const = default;
};

enum class PlacementMode { Centralized, Embedded, Hybrid };

std::string to_string(PlacementMode m);

/// Where each security service runs: all in the DMZ (centralized), all on
/// the BI servers (embedded), or split by OSI layer (hybrid).
struct SecurityPlacement {
  PlacementMode mode = PlacementMode::Centralized;
  std::map<SecurityKind, std::set<std::string>> assignment;

  const std::set<std::string>* nodes_for(SecurityKind k) const;
  bool assigned_to(SecurityKind k, const std::string& node_id) const;
  std::set<SecurityKind> kinds_at(const std::string& node_id) const;

  /// Throws ValidationError when an assignment violates the mode's zone
  /// invariant.
  void validate(const Topology& t) const;

  static SecurityPlacement build(PlacementMode mode, const Topology& t,
                                 const SecurityCatalog& catalog);
};

PlacementMode placement_mode_for(Model m);

/// Zone admission policy enforced by the zone firewall: default-deny list
/// of (client zone, target role) pairs.
struct ZonePolicy {
  std::set<std::pair<Zone, ServiceRole>> allowed;

  bool allows(Zone client_zone, ServiceRole target) const;
  /// Permits extranet clients to reach every application role.
  static ZonePolicy allow_extranet_to_applications();
};

enum class Admission { Allow, Deny };

/// Zone-based admission check; deny when the policy has no matching entry.
Admission admit(const SecurityService& firewall, const ZonePolicy& policy, Zone client_zone,
                ServiceRole target_role);

/// What one request demands from one node: fixed security costs assigned
/// there, byte-proportional inspection, session one-time costs on the
/// session's first request, plus the base application service time.
struct RequestDemand {
  ServiceRole target_role = ServiceRole::DwDm;
  double request_bytes = 0.0;
  double response_bytes = 0.0;
  bool first_of_session = false;
};

/// Whether a control processes this request class at all (ETL rule checks
/// apply to database-bound requests only).
bool service_applies(SecurityKind k, ServiceRole target_role);

double service_demand(const SecurityPlacement& placement, const SecurityCatalog& catalog,
                      const RequestDemand& req, const std::string& node_id,
                      double base_application_service = 0.0);

/// Per-request security service-seconds summed over every node of the given
/// chain (tap nodes included via the placement). Placement-invariant for a
/// fixed catalog.
double total_security_demand(const SecurityPlacement& placement, const SecurityCatalog& catalog,
                             const RequestDemand& req, const std::vector<std::string>& chain_nodes);

struct HotspotEntry {
  std::string node;
  std::string zone;
  double processed_bytes = 0.0;
  double utilization = 0.0;
};

/// Nodes ranked by processed bytes (utilization, then id, as tie-breaks).
std::vector<HotspotEntry> hotspot_report(const MetricsReport& run);

}  // namespace bisim
