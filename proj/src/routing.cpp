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

#include "bisim/routing.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "bisim/errors.hpp"

namespace bisim {

bool RuleMatch::matches(const Node& n) const {
  if (zone && n.zone != *zone) return false;
  if (role && !n.has_role(*role)) return false;
  if (node_id && n.id != *node_id) return false;
  return true;
}

namespace {

const ForwardingRule* first_match(const std::vector<ForwardingRule>& rules, const Node& n) {
  for (const ForwardingRule& r : rules) {
    if (r.match.matches(n)) return &r;
  }
  return nullptr;
}

std::vector<Zone> tiers_of(const Topology& t, const std::vector<std::string>& path) {
  std::vector<Zone> tiers;
  for (const std::string& id : path) {
    Zone z = t.at(id).zone;
    if (tiers.empty() || tiers.back() != z) tiers.push_back(z);
  }
  return tiers;
}

struct WalkState {
  bool cycle_seen = false;
  bool no_rule_seen = false;
};

// Depth-first walk over rule-consistent hops; candidate carriers are tried
// in the (rotated) deterministic order. Returns true once a carrier of the
// target role is reached.
bool walk(const Topology& t, const std::vector<ForwardingRule>& rules, const std::string& cur,
          ServiceRole target, std::vector<std::string>& path,
          const std::map<ServiceRole, std::size_t>& rotation, WalkState& state) {
  const Node& node = t.at(cur);
  if (node.has_role(target)) return true;

  const ForwardingRule* rule = first_match(rules, node);
  if (!rule) {
    state.no_rule_seen = true;
    return false;
  }
  // A rule that forwards a node back into its own role class loops.
  if (node.has_role(rule->next_role)) {
    state.cycle_seen = true;
    return false;
  }

  std::vector<std::string> candidates;
  for (const std::string& next : t.neighbors(cur)) {
    if (t.at(next).has_role(rule->next_role)) candidates.push_back(next);
  }
  if (candidates.size() > 1) {
    auto it = rotation.find(rule->next_role);
    if (it != rotation.end() && it->second > 0) {
      std::rotate(candidates.begin(), candidates.begin() + (it->second % candidates.size()),
                  candidates.end());
    }
  }

  bool all_visited = !candidates.empty();
  for (const std::string& next : candidates) {
    if (std::find(path.begin(), path.end(), next) != path.end()) continue;
    all_visited = false;
    path.push_back(next);
    if (walk(t, rules, next, target, path, rotation, state)) return true;
    path.pop_back();
  }
  if (all_visited) state.cycle_seen = true;
  return false;
}

}  // namespace

ServiceChain ChainResolver::resolve(const std::vector<ForwardingRule>& rules,
                                    const std::string& src, ServiceRole target_role,
                                    const std::string& session_class, bool advance_rotation) {
  if (!topo_->has_node(src)) throw UnresolvedChain("source node does not exist: " + src);

  std::vector<std::string> path{src};
  WalkState state;
  if (!walk(*topo_, rules, src, target_role, path, rotation_, state)) {
    const Node& n = topo_->at(src);
    if (!first_match(rules, n) && !n.has_role(target_role)) {
      throw NoMatchingRule("no rule matches " + src);
    }
    if (state.cycle_seen && !state.no_rule_seen) {
      throw CycleDetected("rules loop before reaching " + to_string(target_role) + " from " + src);
    }
    if (state.no_rule_seen && !state.cycle_seen) {
      throw NoMatchingRule("a node on every path from " + src + " has no applicable rule");
    }
    throw TargetUnreachable("no rule-consistent path from " + src + " to " +
                            to_string(target_role));
  }

  if (advance_rotation) {
    // Spread the next session across each array that offered a choice.
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const ForwardingRule* rule = first_match(rules, topo_->at(path[i]));
      if (!rule) continue;
      std::size_t carriers = 0;
      for (const std::string& next : topo_->neighbors(path[i])) {
        if (topo_->at(next).has_role(rule->next_role)) ++carriers;
      }
      if (carriers > 1) ++rotation_[rule->next_role];
    }
  }

  ServiceChain chain;
  chain.session_class = session_class;
  chain.path = std::move(path);
  chain.tiers = tiers_of(*topo_, chain.path);
  return chain;
}

ServiceChain resolve_chain(const Topology& t, const std::vector<ForwardingRule>& rules,
                           const std::string& src, ServiceRole target_role) {
  ChainResolver resolver(t);
  return resolver.resolve(rules, src, target_role);
}

std::string ReachabilityReport::to_text() const {
  std::ostringstream out;
  out << "pairs=" << pairs.size() << " reachable=" << reachable_pairs
      << " bypasses=" << bypass_count << "\n";
  for (const auto& p : pairs) {
    out << p.client << " -> " << to_string(p.target_role) << ": "
        << (p.reachable ? "reachable" : "unreachable");
    if (p.reachable) out << " hops=" << p.chain_length;
    if (p.security_bypassed) out << " BYPASS";
    if (!p.detail.empty()) out << " (" << p.detail << ")";
    out << "\n";
  }
  return out.str();
}

std::set<ServiceRole> default_mandated_roles(const Topology& t) {
  static const ServiceRole chain_roles[] = {
      ServiceRole::ZoneFirewall,
      ServiceRole::UtmSwitch,
      ServiceRole::RdbmsSecurityMonitor,
      ServiceRole::Ldap,
  };
  std::set<ServiceRole> mandated;
  for (const Node& n : t.nodes()) {
    if (n.zone != Zone::Dmz) continue;
    for (ServiceRole r : chain_roles) {
      if (n.has_role(r)) mandated.insert(r);
    }
  }
  return mandated;
}

namespace {

ReachabilityReport reachability_impl(
    const Topology& t,
    const std::function<const std::vector<ForwardingRule>&(ServiceRole)>& rules_for,
    const std::set<ServiceRole>& mandated_roles, const std::set<ServiceRole>& targets) {
  ReachabilityReport report;

  for (const Node& n : t.nodes()) {
    if (n.kind != NodeKind::Client) continue;
    for (ServiceRole target : targets) {
      const std::vector<ForwardingRule>& rules = rules_for(target);
      PairReachability pair;
      pair.client = n.id;
      pair.target_role = target;
      try {
        ServiceChain chain = resolve_chain(t, rules, n.id, target);
        pair.reachable = true;
        pair.chain_length = chain.path.size() - 1;

        std::set<ServiceRole> seen;
        for (std::size_t i = 0; i + 1 < chain.path.size(); ++i) {
          for (ServiceRole r : t.at(chain.path[i]).roles) seen.insert(r);
        }
        std::string missing;
        for (ServiceRole r : mandated_roles) {
          if (!seen.count(r)) {
            if (!missing.empty()) missing += ",";
            missing += to_string(r);
          }
        }
        if (!missing.empty()) {
          pair.security_bypassed = true;
          pair.detail = "missing: " + missing;
          ++report.bypass_count;
        }
        ++report.reachable_pairs;
      } catch (const SimError& e) {
        pair.reachable = false;
        pair.detail = e.what();
      }
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

std::set<ServiceRole> application_roles_in(const Topology& t) {
  std::set<ServiceRole> targets;
  for (const Node& n : t.nodes()) {
    for (ServiceRole r : n.roles) {
      if (is_application_role(r)) targets.insert(r);
    }
  }
  return targets;
}

}  // namespace

ReachabilityReport check_reachability(const Topology& t, const std::vector<ForwardingRule>& rules,
                                      const std::set<ServiceRole>& mandated_roles) {
  return reachability_impl(
      t, [&](ServiceRole) -> const std::vector<ForwardingRule>& { return rules; }, mandated_roles,
      application_roles_in(t));
}

ReachabilityReport check_reachability_by_class(
    const Topology& t, const std::map<ServiceRole, std::vector<ForwardingRule>>& rules_by_target,
    const std::set<ServiceRole>& mandated_roles) {
  static const std::vector<ForwardingRule> kEmpty;
  std::set<ServiceRole> targets;
  for (const auto& [role, rules] : rules_by_target) targets.insert(role);
  return reachability_impl(
      t,
      [&](ServiceRole target) -> const std::vector<ForwardingRule>& {
        auto it = rules_by_target.find(target);
        return it == rules_by_target.end() ? kEmpty : it->second;
      },
      mandated_roles, targets);
}

std::size_t entry_point_count(const Topology& t, const std::vector<ForwardingRule>& rules) {
  std::set<std::string> entries;
  for (const Node& n : t.nodes()) {
    if (n.kind != NodeKind::Client || n.zone != Zone::Extranet) continue;
    const ForwardingRule* rule = first_match(rules, n);
    for (const std::string& next : t.neighbors(n.id)) {
      const Node& other = t.at(next);
      if (other.zone == Zone::Extranet) continue;
      if (rule == nullptr || other.has_role(rule->next_role)) entries.insert(next);
    }
  }
  return entries.size();
}

std::size_t tier_hops(const Topology& t, const ServiceChain& chain) {
  if (chain.path.empty()) throw UnresolvedChain("chain has an empty path");
  std::set<Zone> zones;
  for (std::size_t i = 1; i < chain.path.size(); ++i) {
    const Node* n = t.find(chain.path[i]);
    if (!n) throw UnresolvedChain("chain node not in topology: " + chain.path[i]);
    zones.insert(n->zone);
  }
  if (zones.empty()) zones.insert(t.at(chain.path.front()).zone);
  return zones.size();
}

std::vector<ForwardingRule> model_rules(Model m, ServiceRole target_role) {
  auto zone_rule = [](Zone z, ServiceRole next) {
    return ForwardingRule{RuleMatch{z, std::nullopt, std::nullopt}, next};
  };
  auto role_rule = [](ServiceRole at, ServiceRole next) {
    return ForwardingRule{RuleMatch{std::nullopt, at, std::nullopt}, next};
  };
  switch (m) {
    case Model::A:
      return {
          zone_rule(Zone::Extranet, ServiceRole::ZoneFirewall),
          role_rule(ServiceRole::ZoneFirewall, ServiceRole::UtmSwitch),
          role_rule(ServiceRole::UtmSwitch, ServiceRole::RdbmsSecurityMonitor),
          role_rule(ServiceRole::RdbmsSecurityMonitor, ServiceRole::Ldap),
          role_rule(ServiceRole::Ldap, ServiceRole::CloudSwitch),
          role_rule(ServiceRole::CloudSwitch, target_role),
      };
    case Model::B:
      return {
          zone_rule(Zone::Extranet, ServiceRole::CloudSwitch),
          role_rule(ServiceRole::CloudSwitch, target_role),
      };
    case Model::C:
      return {
          zone_rule(Zone::Extranet, ServiceRole::ZoneFirewall),
          role_rule(ServiceRole::ZoneFirewall, ServiceRole::UtmSwitch),
          role_rule(ServiceRole::UtmSwitch, ServiceRole::CloudSwitch),
          role_rule(ServiceRole::CloudSwitch, target_role),
      };
    case Model::Custom:
      return {};
  }
  return {};
}

}  // namespace bisim
