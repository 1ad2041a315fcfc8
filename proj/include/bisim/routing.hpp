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

#include "bisim/topology.hpp"

namespace bisim {

/// Predicate over (zone, role, node id); empty fields match anything,
/// populated fields must all hold.
struct RuleMatch {
  std::optional<Zone> zone;
  std::optional<ServiceRole> role;
  std::optional<std::string> node_id;

  bool matches(const Node& n) const;
  bool operator==(const RuleMatch&) const = default;
};

/// Traffic matched by `match` is forwarded to an adjacent node carrying
/// `next_role`. Rules are evaluated first-match in declaration order.
struct ForwardingRule {
  RuleMatch match;
  ServiceRole next_role = ServiceRole::CloudSwitch;

  bool operator==(const ForwardingRule&) const = default;
};

struct ServiceChain {
  std::string session_class;
  std::vector<std::string> path;  // client first, application server last
  std::vector<Zone> tiers;        // zones along the path, consecutive duplicates removed

  const std::string& destination() const { return path.back(); }
};

/// Resolves rule-based chains. Holds the per-role rotation counters used to
/// spread sessions round-robin across an array sharing a role; a fresh
/// resolver always starts at the lowest node id.
class ChainResolver {
 public:
  explicit ChainResolver(const Topology& t) : topo_(&t) {}

  /// Walks the rules hop by hop from `src` until a node carrying
  /// `target_role` is reached. Throws NoMatchingRule, CycleDetected or
  /// TargetUnreachable. When `advance_rotation` is set, array choice points
  /// rotate so the next session lands on the next server.
  ServiceChain resolve(const std::vector<ForwardingRule>& rules, const std::string& src,
                       ServiceRole target_role, const std::string& session_class = "",
                       bool advance_rotation = false);

 private:
  const Topology* topo_;
  std::map<ServiceRole, std::size_t> rotation_;
};

/// One-shot resolution with rotation counters at zero.
ServiceChain resolve_chain(const Topology& t, const std::vector<ForwardingRule>& rules,
                           const std::string& src, ServiceRole target_role);

struct PairReachability {
  std::string client;
  ServiceRole target_role = ServiceRole::OlapDashboards;
  bool reachable = false;
  std::size_t chain_length = 0;
  bool security_bypassed = false;
  std::string detail;  // error name when unreachable, bypassed roles otherwise
};

struct ReachabilityReport {
  std::vector<PairReachability> pairs;
  std::size_t reachable_pairs = 0;
  std::size_t bypass_count = 0;
  std::string to_text() const;
};

/// For every (client, application role) pair: reachable?, chain length, and
/// whether every mandated security role appears on the chain before the
/// application server. With an empty mandated set the bypass check is
/// vacuous (embedded-security topologies).
ReachabilityReport check_reachability(const Topology& t, const std::vector<ForwardingRule>& rules,
                                      const std::set<ServiceRole>& mandated_roles);

/// Same report with per-destination rule sets, the way the architectures
/// declare them (the final hop rule names the session's target role).
ReachabilityReport check_reachability_by_class(
    const Topology& t, const std::map<ServiceRole, std::vector<ForwardingRule>>& rules_by_target,
    const std::set<ServiceRole>& mandated_roles);

/// Mandated roles derived from the topology: the chain security roles that
/// exist on DMZ nodes.
std::set<ServiceRole> default_mandated_roles(const Topology& t);

/// Number of distinct nodes accepting first-contact traffic from the
/// extranet zone.
std::size_t entry_point_count(const Topology& t, const std::vector<ForwardingRule>& rules);

/// Distinct processing zones traversed after the source node: the DMZ counts
/// as one tier, the BI cloud as one tier.
std::size_t tier_hops(const Topology& t, const ServiceChain& chain);

/// The rule set a given architecture uses for sessions aimed at target_role.
std::vector<ForwardingRule> model_rules(Model m, ServiceRole target_role);

}  // namespace bisim
