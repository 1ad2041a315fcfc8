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

// Test-only routing oracle: exhaustive enumeration of rule-consistent
// simple paths, independent of the production resolver.

#pragma once

#include <string>
#include <vector>

#include "bisim/routing.hpp"
#include "bisim/rng.hpp"
#include "bisim/topology.hpp"

namespace bisim::testing {

inline const ForwardingRule* oracle_first_match(const std::vector<ForwardingRule>& rules,
                                                const Node& n) {
  for (const ForwardingRule& r : rules) {
    bool ok = true;
    if (r.match.zone && n.zone != *r.match.zone) ok = false;
    if (r.match.role && !n.has_role(*r.match.role)) ok = false;
    if (r.match.node_id && n.id != *r.match.node_id) ok = false;
    if (ok) return &r;
  }
  return nullptr;
}

inline void oracle_extend(const Topology& t, const std::vector<ForwardingRule>& rules,
                          ServiceRole target, std::vector<std::string>& path,
                          std::vector<std::vector<std::string>>& out) {
  const Node& cur = t.at(path.back());
  if (cur.has_role(target)) {
    out.push_back(path);
    return;
  }
  const ForwardingRule* rule = oracle_first_match(rules, cur);
  if (!rule) return;
  // Forwarding a node into its own role class is a loop, not a hop.
  if (cur.has_role(rule->next_role)) return;
  for (const std::string& next : t.neighbors(cur.id)) {
    if (!t.at(next).has_role(rule->next_role)) continue;
    bool visited = false;
    for (const std::string& seen : path) {
      if (seen == next) visited = true;
    }
    if (visited) continue;
    path.push_back(next);
    oracle_extend(t, rules, target, path, out);
    path.pop_back();
  }
}

/// Every rule-consistent simple path from src to a node carrying target, in
/// the canonical (ascending node id) candidate order.
inline std::vector<std::vector<std::string>> enumerate_rule_paths(
    const Topology& t, const std::vector<ForwardingRule>& rules, const std::string& src,
    ServiceRole target) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> path{src};
  oracle_extend(t, rules, target, path, out);
  return out;
}

struct RoutingInstance {
  Topology topo;
  std::vector<ForwardingRule> rules;
  std::string src;
  ServiceRole target = ServiceRole::OlapDashboards;
};

/// Small random topology plus a random rule set; sizes stay <= 8 nodes.
inline RoutingInstance random_routing_instance(std::uint64_t seed) {
  RngStream stream(seed, "routing-instance");
  const ServiceRole roles[] = {ServiceRole::Client,        ServiceRole::ZoneFirewall,
                               ServiceRole::UtmSwitch,     ServiceRole::CloudSwitch,
                               ServiceRole::OlapDashboards, ServiceRole::DwDm};
  const Zone zones[] = {Zone::Extranet, Zone::Dmz, Zone::BiCloud};

  RoutingInstance inst;
  int n = 2 + static_cast<int>(stream.uniform01() * 7);  // 2..8
  for (int i = 0; i < n; ++i) {
    Node node;
    node.id = "n" + std::to_string(i);
    node.kind = NodeKind::Server;
    node.service_rate = 1.0;
    node.queue_capacity = 4;
    node.zone = zones[stream.next_u64() % 3];
    node.roles.insert(roles[stream.next_u64() % 6]);
    if (stream.uniform01() < 0.35) node.roles.insert(roles[stream.next_u64() % 6]);
    inst.topo.add_node(node);
  }
  // Random spanning tree keeps most instances connected; extra edges add
  // branching.
  for (int i = 1; i < n; ++i) {
    int j = static_cast<int>(stream.next_u64() % static_cast<std::uint64_t>(i));
    inst.topo.add_link({"n" + std::to_string(j), "n" + std::to_string(i), 1e9, 0.0});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (stream.uniform01() < 0.2 && !inst.topo.link_between("n" + std::to_string(i),
                                                              "n" + std::to_string(j))) {
        inst.topo.add_link({"n" + std::to_string(i), "n" + std::to_string(j), 1e9, 0.0});
      }
    }
  }

  int rule_count = 2 + static_cast<int>(stream.next_u64() % 5);
  for (int r = 0; r < rule_count; ++r) {
    ForwardingRule rule;
    switch (stream.next_u64() % 3) {
      case 0:
        rule.match.zone = zones[stream.next_u64() % 3];
        break;
      case 1:
        rule.match.role = roles[stream.next_u64() % 6];
        break;
      default:
        rule.match.node_id = "n" + std::to_string(stream.next_u64() % n);
        break;
    }
    rule.next_role = roles[stream.next_u64() % 6];
    inst.rules.push_back(rule);
  }

  inst.src = "n" + std::to_string(stream.next_u64() % n);
  inst.target = roles[stream.next_u64() % 6];
  return inst;
}

/// A rule set that loops between two roles before any target carrier.
inline RoutingInstance cycle_routing_instance(std::uint64_t seed) {
  RngStream stream(seed, "cycle-instance");
  RoutingInstance inst;
  int extras = static_cast<int>(stream.next_u64() % 3);

  auto add = [&](const std::string& id, ServiceRole role, Zone zone) {
    Node n;
    n.id = id;
    n.kind = NodeKind::Server;
    n.roles = {role};
    n.service_rate = 1.0;
    n.queue_capacity = 4;
    n.zone = zone;
    inst.topo.add_node(n);
  };
  add("src", ServiceRole::Client, Zone::Extranet);
  add("ping", ServiceRole::ZoneFirewall, Zone::Dmz);
  add("pong", ServiceRole::UtmSwitch, Zone::Dmz);
  for (int i = 0; i < extras; ++i) {
    add("pad" + std::to_string(i), ServiceRole::CloudSwitch, Zone::BiCloud);
  }
  inst.topo.add_link({"src", "ping", 1e9, 0.0});
  inst.topo.add_link({"ping", "pong", 1e9, 0.0});
  for (int i = 0; i < extras; ++i) {
    inst.topo.add_link({"pong", "pad" + std::to_string(i), 1e9, 0.0});
  }

  inst.rules = {
      {RuleMatch{Zone::Extranet, std::nullopt, std::nullopt}, ServiceRole::ZoneFirewall},
      {RuleMatch{std::nullopt, ServiceRole::ZoneFirewall, std::nullopt}, ServiceRole::UtmSwitch},
      {RuleMatch{std::nullopt, ServiceRole::UtmSwitch, std::nullopt}, ServiceRole::ZoneFirewall},
  };
  inst.src = "src";
  inst.target = ServiceRole::OlapDashboards;  // never present
  return inst;
}

/// A centralized topology with a shortcut wired around one mandated
/// security hop, plus the matching rule set: the resolved chain skips the
/// RDBMS monitor (even seeds) or the LDAP hop (odd seeds).
inline RoutingInstance bypass_routing_instance(std::uint64_t seed, const CalibrationParams& params,
                                               ServiceRole target) {
  RoutingInstance inst;
  inst.topo = build_model_a(params);
  inst.target = target;
  inst.src = inst.topo.nodes_with_role(ServiceRole::Client).front();

  bool skip_rdbms = (seed % 2) == 0;
  if (skip_rdbms) {
    inst.topo.add_link({"utm_switch", "ldap", 1e9, 0.0});
  } else {
    for (int c = 1; c <= 3; ++c) {
      inst.topo.add_link({"rdbms_sec_mon", "cloud_switch_" + std::to_string(c), 1e9, 0.0});
    }
  }
  for (const ForwardingRule& r : model_rules(Model::A, target)) {
    if (skip_rdbms && r.next_role == ServiceRole::RdbmsSecurityMonitor) {
      inst.rules.push_back({r.match, ServiceRole::Ldap});
      continue;
    }
    if (skip_rdbms && r.match.role && *r.match.role == ServiceRole::RdbmsSecurityMonitor) continue;
    if (!skip_rdbms && r.next_role == ServiceRole::Ldap) {
      inst.rules.push_back({r.match, ServiceRole::CloudSwitch});
      continue;
    }
    if (!skip_rdbms && r.match.role && *r.match.role == ServiceRole::Ldap) continue;
    inst.rules.push_back(r);
  }
  return inst;
}

}  // namespace bisim::testing
