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

#include <map>
#include <queue>
#include <set>

#include <doctest.h>

#include "bisim/errors.hpp"
#include "bisim/rng.hpp"
#include "bisim/topology.hpp"

using namespace bisim;

namespace {

std::size_t count_kind(const Topology& t, NodeKind k) {
  std::size_t n = 0;
  for (const Node& node : t.nodes()) {
    if (node.kind == k) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("model A census matches the architecture") {
  CalibrationParams p;
  Topology t = build_model_a(p);

  CHECK(t.nodes_with_role(ServiceRole::OlapDashboards).size() == 5);
  CHECK(t.nodes_with_role(ServiceRole::DwDm).size() == 8);
  CHECK(t.nodes_with_role(ServiceRole::Client).size() == 48);
  CHECK(t.nodes_with_role(ServiceRole::ZoneFirewall).size() == 1);
  CHECK(t.nodes_with_role(ServiceRole::UtmSwitch).size() == 1);
  CHECK(t.nodes_with_role(ServiceRole::RdbmsSecurityMonitor).size() == 1);
  CHECK(t.nodes_with_role(ServiceRole::Ldap).size() == 1);
  CHECK(t.nodes_with_role(ServiceRole::UtmDbActivityMonitor).size() == 1);
  CHECK(t.nodes_with_role(ServiceRole::Idps).size() == 2);
  // Three cloud switches plus the four-switch routing tier.
  CHECK(t.nodes_with_role(ServiceRole::CloudSwitch).size() == 7);
  CHECK(t.nodes_in_zone(Zone::Dmz).size() == 7);
  CHECK(count_kind(t, NodeKind::Firewall) == 1);
}

TEST_CASE("degenerate OLAP array still validates") {
  CalibrationParams p;
  p.olap_count = 1;
  Topology t = build_model_a(p);
  CHECK(t.nodes_with_role(ServiceRole::OlapDashboards).size() == 1);
  CHECK(validate(t).clean());
}

TEST_CASE("validator accepts every built architecture") {
  CalibrationParams p;
  CHECK(validate(build_model_a(p)).clean());
  CHECK(validate(build_model_b(p)).clean());
  CHECK(validate(build_model_c_hybrid(p)).clean());
}

TEST_CASE("builders are pure functions of their parameters") {
  CalibrationParams p;
  CHECK(build_model_a(p) == build_model_a(p));
  CHECK(build_model_b(p) == build_model_b(p));
  CHECK(build_model_c_hybrid(p) == build_model_c_hybrid(p));
}

TEST_CASE("model B embeds security on every server") {
  CalibrationParams p;
  Topology t = build_model_b(p);

  CHECK(t.nodes_in_zone(Zone::Dmz).empty());
  std::set<std::string> security_nodes;
  std::set<std::string> application_nodes;
  for (const Node& n : t.nodes()) {
    if (n.kind != NodeKind::Server) continue;
    CHECK(n.has_role(ServiceRole::BiSecurityUtm));
    for (ServiceRole r : n.roles) {
      if (is_security_role(r)) security_nodes.insert(n.id);
      if (is_application_role(r)) application_nodes.insert(n.id);
    }
  }
  // Every server acts as a security node and vice versa.
  CHECK(security_nodes == application_nodes);

  Topology a = build_model_a(p);
  std::size_t a_cloud_servers = 0;
  for (const Node& n : a.nodes()) {
    if (n.kind == NodeKind::Server && n.zone == Zone::BiCloud) ++a_cloud_servers;
  }
  CHECK(count_kind(t, NodeKind::Server) == a_cloud_servers);
}

TEST_CASE("hybrid keeps a slim DMZ and embeds application security") {
  CalibrationParams p;
  Topology c = build_model_c_hybrid(p);
  Topology a = build_model_a(p);

  CHECK(c.nodes_in_zone(Zone::Dmz).size() < a.nodes_in_zone(Zone::Dmz).size());
  for (const Node& n : c.nodes()) {
    if (n.kind == NodeKind::Server && n.zone == Zone::BiCloud) {
      CHECK(n.has_role(ServiceRole::BiSecurityUtm));
    }
  }
}

TEST_CASE("hybrid with no application-layer security is a contradiction") {
  CalibrationParams p;
  p.rdbms_rules_request_cost = 0.0;
  p.monitor_byte_cost = 0.0;
  p.idps_request_cost = 0.0;
  CHECK_THROWS_AS(build_model_c_hybrid(p), InvalidCalibration);
}

TEST_CASE("empty topology reports no_nodes") {
  Topology t;
  ValidationReport r = validate(t);
  REQUIRE(r.findings.size() == 1);
  CHECK(r.findings[0].kind == "no_nodes");
}

TEST_CASE("client wired straight into the BI cloud violates the zone policy") {
  CalibrationParams p;
  Topology t = build_model_a(p);
  t.add_link({"client_001", "cloud_switch_2", 1e9, 0.0});
  ValidationReport r = validate(t);
  bool found = false;
  for (const auto& f : r.findings) {
    if (f.kind == "zone_policy_violation") found = true;
  }
  CHECK(found);
}

TEST_CASE("model B clients may reach cloud switches directly") {
  CalibrationParams p;
  Topology t = build_model_b(p);
  // No DMZ: the corresponding zone rule does not apply.
  CHECK(validate(t).clean());
}

TEST_CASE("connectivity findings equal an independent BFS oracle") {
  RngStream stream(2024, "bfs-oracle");
  for (int trial = 0; trial < 50; ++trial) {
    Topology t;
    int n = 3 + static_cast<int>(stream.uniform01() * 6);
    for (int i = 0; i < n; ++i) {
      Node node;
      node.id = "n" + std::to_string(i);
      node.kind = NodeKind::Switch;
      node.roles = {ServiceRole::CloudSwitch};
      node.service_rate = 1.0;
      node.queue_capacity = 1;
      node.zone = Zone::BiCloud;
      t.add_node(node);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (stream.uniform01() < 0.3) {
          t.add_link({"n" + std::to_string(i), "n" + std::to_string(j), 1e9, 0.0});
        }
      }
    }

    // Test-local BFS from node 0.
    std::set<std::string> reached{"n0"};
    std::queue<std::string> frontier;
    frontier.push("n0");
    while (!frontier.empty()) {
      auto cur = frontier.front();
      frontier.pop();
      for (const Link& l : t.links()) {
        std::string other;
        if (l.a == cur) other = l.b;
        if (l.b == cur) other = l.a;
        if (!other.empty() && reached.insert(other).second) frontier.push(other);
      }
    }

    std::set<std::string> flagged;
    for (const auto& f : validate(t).findings) {
      if (f.kind == "disconnected") flagged.insert(f.subject);
    }
    std::set<std::string> expected;
    for (const Node& node : t.nodes()) {
      if (!reached.count(node.id)) expected.insert(node.id);
    }
    CHECK(flagged == expected);
  }
}

TEST_CASE("invalid calibration is rejected with the field name") {
  CalibrationParams p;
  p.rdbms_rate = -5.0;
  try {
    build_model_a(p);
    FAIL("expected InvalidCalibration");
  } catch (const InvalidCalibration& e) {
    CHECK(std::string(e.what()).find("rdbms_rate") != std::string::npos);
  }
}

TEST_CASE("topology with no clients builds and validates") {
  CalibrationParams p;
  p.client_count = 0;
  Topology t = build_model_a(p);
  CHECK(t.nodes_with_role(ServiceRole::Client).empty());
  CHECK(validate(t).clean());
}
