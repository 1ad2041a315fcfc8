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

#include "bisim/security.hpp"

#include <algorithm>

#include "bisim/errors.hpp"

namespace bisim {

std::string to_string(SecurityKind k) {
  switch (k) {
    case SecurityKind::FirewallAdmission:
      return "ZONE_FIREWALL_ADMISSION";
    case SecurityKind::LdapAuth:
      return "LDAP_AUTH";
    case SecurityKind::RdbmsEtlRules:
      return "RDBMS_ETL_RULES";
    case SecurityKind::DbActivityMonitor:
      return "DB_ACTIVITY_MONITOR";
    case SecurityKind::IdpsInspection:
      return "IDPS_INSPECTION";
    case SecurityKind::SessionEncryption:
      return "SESSION_ENCRYPTION";
  }
  return "UNKNOWN";
}

SecurityKind security_kind_from_string(const std::string& s) {
  if (s == "ZONE_FIREWALL_ADMISSION") return SecurityKind::FirewallAdmission;
  if (s == "LDAP_AUTH") return SecurityKind::LdapAuth;
  if (s == "RDBMS_ETL_RULES") return SecurityKind::RdbmsEtlRules;
  if (s == "DB_ACTIVITY_MONITOR") return SecurityKind::DbActivityMonitor;
  if (s == "IDPS_INSPECTION") return SecurityKind::IdpsInspection;
  if (s == "SESSION_ENCRYPTION") return SecurityKind::SessionEncryption;
  throw ParseError("unknown security kind: " + s);
}

std::string to_string(OsiLayer l) {
  switch (l) {
    case OsiLayer::Network:
      return "network";
    case OsiLayer::Transport:
      return "transport";
    case OsiLayer::Session:
      return "session";
    case OsiLayer::Presentation:
      return "presentation";
    case OsiLayer::Application:
      return "application";
  }
  return "unknown";
}

OsiLayer layer_of(SecurityKind k) {
  switch (k) {
    case SecurityKind::FirewallAdmission:
      return OsiLayer::Network;
    case SecurityKind::LdapAuth:
      return OsiLayer::Session;
    case SecurityKind::SessionEncryption:
      return OsiLayer::Presentation;
    case SecurityKind::RdbmsEtlRules:
    case SecurityKind::DbActivityMonitor:
    case SecurityKind::IdpsInspection:
      return OsiLayer::Application;
  }
  return OsiLayer::Network;
}

const SecurityService* SecurityCatalog::find(SecurityKind k) const {
  for (const SecurityService& s : services) {
    if (s.kind == k) return &s;
  }
  return nullptr;
}

double SecurityCatalog::total_added_bytes() const {
  double total = 0.0;
  for (const SecurityService& s : services) total += s.added_bytes;
  return total;
}

SecurityCatalog SecurityCatalog::from_params(const CalibrationParams& p) {
  SecurityCatalog c;
  auto add = [&](SecurityKind kind, double per_request, double per_session, double per_byte,
                 double added) {
    c.services.push_back(
        {kind, layer_of(kind), per_request, per_session, per_byte, added});
  };
  add(SecurityKind::FirewallAdmission, p.firewall_request_cost, p.firewall_session_cost, 0.0, 0.0);
  add(SecurityKind::LdapAuth, 0.0, p.ldap_session_cost, 0.0, 0.0);
  add(SecurityKind::RdbmsEtlRules, p.rdbms_rules_request_cost, 0.0, 0.0, 0.0);
  add(SecurityKind::DbActivityMonitor, 0.0, 0.0, p.monitor_byte_cost, 0.0);
  if (p.idps_request_cost > 0.0) {
    add(SecurityKind::IdpsInspection, p.idps_request_cost, 0.0, 0.0, 0.0);
  }
  add(SecurityKind::SessionEncryption, p.encryption_request_cost, 0.0, 0.0,
      p.encryption_added_bytes);
  return c;
}

std::string to_string(PlacementMode m) {
  switch (m) {
    case PlacementMode::Centralized:
      return "centralized";
    case PlacementMode::Embedded:
      return "embedded";
    case PlacementMode::Hybrid:
      return "hybrid";
  }
  return "unknown";
}

PlacementMode placement_mode_for(Model m) {
  switch (m) {
    case Model::A:
      return PlacementMode::Centralized;
    case Model::B:
      return PlacementMode::Embedded;
    case Model::C:
      return PlacementMode::Hybrid;
    case Model::Custom:
      return PlacementMode::Centralized;
  }
  return PlacementMode::Centralized;
}

const std::set<std::string>* SecurityPlacement::nodes_for(SecurityKind k) const {
  auto it = assignment.find(k);
  if (it == assignment.end()) return nullptr;
  return &it->second;
}

bool SecurityPlacement::assigned_to(SecurityKind k, const std::string& node_id) const {
  const std::set<std::string>* nodes = nodes_for(k);
  return nodes && nodes->count(node_id) > 0;
}

std::set<SecurityKind> SecurityPlacement::kinds_at(const std::string& node_id) const {
  std::set<SecurityKind> out;
  for (const auto& [kind, nodes] : assignment) {
    if (nodes.count(node_id)) out.insert(kind);
  }
  return out;
}

void SecurityPlacement::validate(const Topology& t) const {
  for (const auto& [kind, nodes] : assignment) {
    for (const std::string& id : nodes) {
      const Node& n = t.at(id);
      switch (mode) {
        case PlacementMode::Centralized:
          if (n.zone != Zone::Dmz) {
            throw ValidationError("centralized placement assigns " + to_string(kind) +
                                  " outside the dmz: " + id);
          }
          break;
        case PlacementMode::Embedded:
          if (n.zone != Zone::BiCloud || n.kind != NodeKind::Server) {
            throw ValidationError("embedded placement assigns " + to_string(kind) +
                                  " off the BI servers: " + id);
          }
          break;
        case PlacementMode::Hybrid:
          if (layer_of(kind) == OsiLayer::Application) {
            if (n.zone != Zone::BiCloud || n.kind != NodeKind::Server) {
              throw ValidationError("hybrid placement requires application-layer " +
                                    to_string(kind) + " on BI servers: " + id);
            }
          } else if (n.zone != Zone::Dmz) {
            throw ValidationError("hybrid placement requires " + to_string(kind) +
                                  " in the dmz: " + id);
          }
          break;
      }
    }
  }
}

SecurityPlacement SecurityPlacement::build(PlacementMode mode, const Topology& t,
                                           const SecurityCatalog& catalog) {
  SecurityPlacement placement;
  placement.mode = mode;

  auto role_nodes = [&](ServiceRole r) {
    std::set<std::string> out;
    for (const std::string& id : t.nodes_with_role(r)) out.insert(id);
    return out;
  };
  std::set<std::string> servers;
  for (const Node& n : t.nodes()) {
    if (n.zone == Zone::BiCloud && n.kind == NodeKind::Server) servers.insert(n.id);
  }

  for (const SecurityService& svc : catalog.services) {
    switch (mode) {
      case PlacementMode::Centralized:
        switch (svc.kind) {
          case SecurityKind::FirewallAdmission:
          case SecurityKind::SessionEncryption:
            placement.assignment[svc.kind] = role_nodes(ServiceRole::ZoneFirewall);
            break;
          case SecurityKind::LdapAuth:
            placement.assignment[svc.kind] = role_nodes(ServiceRole::Ldap);
            break;
          case SecurityKind::RdbmsEtlRules:
            placement.assignment[svc.kind] = role_nodes(ServiceRole::RdbmsSecurityMonitor);
            break;
          case SecurityKind::DbActivityMonitor:
            placement.assignment[svc.kind] = role_nodes(ServiceRole::UtmDbActivityMonitor);
            break;
          case SecurityKind::IdpsInspection:
            placement.assignment[svc.kind] = role_nodes(ServiceRole::Idps);
            break;
        }
        break;
      case PlacementMode::Embedded:
        placement.assignment[svc.kind] = servers;
        break;
      case PlacementMode::Hybrid:
        if (layer_of(svc.kind) == OsiLayer::Application) {
          placement.assignment[svc.kind] = servers;
        } else if (svc.kind == SecurityKind::LdapAuth) {
          // Session-layer directory lookups consolidate into the UTM box.
          placement.assignment[svc.kind] = role_nodes(ServiceRole::UtmSwitch);
        } else {
          placement.assignment[svc.kind] = role_nodes(ServiceRole::ZoneFirewall);
        }
        break;
    }
  }
  return placement;
}

bool ZonePolicy::allows(Zone client_zone, ServiceRole target) const {
  return allowed.count({client_zone, target}) > 0;
}

ZonePolicy ZonePolicy::allow_extranet_to_applications() {
  ZonePolicy p;
  for (ServiceRole r : {ServiceRole::OlapDashboards, ServiceRole::OlapViews, ServiceRole::DwDm,
                        ServiceRole::BiDwDm, ServiceRole::BiApplication}) {
    p.allowed.insert({Zone::Extranet, r});
  }
  return p;
}

Admission admit(const SecurityService& firewall, const ZonePolicy& policy, Zone client_zone,
                ServiceRole target_role) {
  if (firewall.kind != SecurityKind::FirewallAdmission) {
    throw ValidationError("admit requires a ZONE_FIREWALL_ADMISSION service");
  }
  return policy.allows(client_zone, target_role) ? Admission::Allow : Admission::Deny;
}

bool service_applies(SecurityKind k, ServiceRole target_role) {
  if (k == SecurityKind::RdbmsEtlRules) {
    // ETL rule checks are database traffic governance.
    return target_role == ServiceRole::DwDm || target_role == ServiceRole::BiDwDm;
  }
  return true;
}

double service_demand(const SecurityPlacement& placement, const SecurityCatalog& catalog,
                      const RequestDemand& req, const std::string& node_id,
                      double base_application_service) {
  double demand = base_application_service;
  for (const SecurityService& svc : catalog.services) {
    if (!placement.assigned_to(svc.kind, node_id)) continue;
    if (!service_applies(svc.kind, req.target_role)) continue;
    demand += svc.per_request_cost;
    demand += svc.per_byte_cost * (req.request_bytes + req.response_bytes);
    if (req.first_of_session) demand += svc.per_session_cost;
  }
  return demand;
}

double total_security_demand(const SecurityPlacement& placement, const SecurityCatalog& catalog,
                             const RequestDemand& req,
                             const std::vector<std::string>& chain_nodes) {
  // Each service charges at most once per request: at the first chain node
  // it is assigned to.
  double total = 0.0;
  for (const SecurityService& svc : catalog.services) {
    if (!service_applies(svc.kind, req.target_role)) continue;
    for (const std::string& node : chain_nodes) {
      if (!placement.assigned_to(svc.kind, node)) continue;
      total += svc.per_request_cost + svc.per_byte_cost * (req.request_bytes + req.response_bytes);
      if (req.first_of_session) total += svc.per_session_cost;
      break;
    }
  }
  return total;
}

std::vector<HotspotEntry> hotspot_report(const MetricsReport& run) {
  std::vector<HotspotEntry> entries;
  for (const auto& [id, usage] : run.nodes) {
    HotspotEntry e;
    e.node = id;
    e.zone = usage.zone;
    e.processed_bytes = usage.processed_bytes;
    e.utilization = usage.utilization(run.horizon);
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const HotspotEntry& a, const HotspotEntry& b) {
    if (a.processed_bytes != b.processed_bytes) return a.processed_bytes > b.processed_bytes;
    if (a.utilization != b.utilization) return a.utilization > b.utilization;
    return a.node < b.node;
  });
  return entries;
}

}  // namespace bisim
