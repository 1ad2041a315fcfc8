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

// Acceptance suite: runs the committed reference scenarios and the
// analytical oracles, printing one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bisim/engine.hpp"
#include "bisim/errors.hpp"
#include "bisim/metrics.hpp"
#include "bisim/routing.hpp"
#include "bisim/scenario.hpp"
#include "bisim/security.hpp"
#include "bisim/transport.hpp"
#include "../common/routing_oracle.hpp"

using namespace bisim;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

std::string scenario_path(const std::string& file) {
  return std::string(BISIM_SCENARIO_DIR) + "/" + file;
}

struct TimedRun {
  RunResult result;
  double wall_seconds = 0.0;
};

TimedRun timed_run(const ScenarioConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  TimedRun out;
  out.result = run_scenario(cfg);
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

double mean_of(const MetricsReport& r, const std::string& series) {
  return r.series_mean(series);
}

bool conservation_holds(const MetricsReport& r) {
  return r.counters.issued ==
         r.counters.completed + r.counters.rejected + r.counters.in_flight_at_horizon;
}

bool no_retx_without_drops(const MetricsReport& r) {
  return r.counters.drops > 0 || r.counters.retransmissions == 0;
}

}  // namespace

int main() {
  ScenarioConfig cfg_a = load_scenario(scenario_path("model_a.json"));
  ScenarioConfig cfg_b = load_scenario(scenario_path("model_b.json"));
  ScenarioConfig cfg_c = load_scenario(scenario_path("model_c.json"));

  TimedRun a = timed_run(cfg_a);
  TimedRun b = timed_run(cfg_b);
  TimedRun c = timed_run(cfg_c);
  const MetricsReport& ra = a.result.report;
  const MetricsReport& rb = b.result.report;
  const MetricsReport& rc = c.result.report;

  std::vector<const MetricsReport*> matrix{&ra, &rb, &rc};

  // Criterion 1: directional reproduction under the reference calibration.
  {
    double db_a = mean_of(ra, "db_query_response");
    double http_a = mean_of(ra, "http_object_response");
    double seg_a = mean_of(ra, "tcp_segment_delay");
    std::uint64_t hot_windows = ra.windows_with_retransmissions_above(1000);
    double db_b = mean_of(rb, "db_query_response");

    std::ostringstream d;
    d << "A: db=" << db_a << "s http=" << http_a << "s seg=" << seg_a << "s windows>1000="
      << hot_windows << "; B: db=" << db_b << "s drops=" << rb.counters.drops
      << " retx=" << rb.counters.retransmissions << "; wall A=" << a.wall_seconds
      << "s B=" << b.wall_seconds << "s";
    bool ok = db_a > 20.0 && http_a >= 1.0 && http_a <= 3.0 && seg_a >= 2.0 && seg_a <= 6.0 &&
              hot_windows >= 2 && rb.counters.drops == 0 && rb.counters.retransmissions == 0 &&
              db_b < 2.0 && a.wall_seconds < 60.0 && b.wall_seconds < 60.0;
    report(1, "directional reproduction", ok, d.str());
  }

  // Criterion 2: hybrid ordering and single entry point.
  {
    double db_a = mean_of(ra, "db_query_response");
    double db_b = mean_of(rb, "db_query_response");
    double db_c = mean_of(rc, "db_query_response");
    Topology topo_c = build_model_c_hybrid(cfg_c.calibration);
    std::size_t entries_c = entry_point_count(topo_c, model_rules(Model::C, ServiceRole::DwDm));
    std::ostringstream d;
    d << "db means B=" << db_b << " < C=" << db_c << " < A=" << db_a << "; C entries=" << entries_c;
    report(2, "hybrid ordering", db_b < db_c && db_c < db_a && entries_c == 1, d.str());
  }

  // Criterion 3: structural claims, exact integers.
  {
    Topology topo_a = build_model_a(cfg_a.calibration);
    Topology topo_b = build_model_b(cfg_b.calibration);
    auto hops = [](const Topology& t, Model m) {
      ServiceChain chain = resolve_chain(t, model_rules(m, ServiceRole::OlapDashboards),
                                         t.nodes_with_role(ServiceRole::Client).front(),
                                         ServiceRole::OlapDashboards);
      return tier_hops(t, chain);
    };
    std::size_t hops_a = hops(topo_a, Model::A);
    std::size_t hops_b = hops(topo_b, Model::B);
    std::size_t entries_a = entry_point_count(topo_a, model_rules(Model::A, ServiceRole::DwDm));
    std::size_t entries_b = entry_point_count(topo_b, model_rules(Model::B, ServiceRole::DwDm));
    std::ostringstream d;
    d << "tier_hops A=" << hops_a << " B=" << hops_b << "; entry_points A=" << entries_a
      << " B=" << entries_b;
    report(3, "structural claims", hops_a == 2 && hops_b == 1 && entries_a == 1 && entries_b > 1,
           d.str());
  }

  // Criterion 4: the DB activity monitor leads the DMZ security servers in
  // processed bytes.
  {
    Topology topo_a = build_model_a(cfg_a.calibration);
    std::string leader;
    double leader_bytes = -1.0;
    for (const auto& e : hotspot_report(ra)) {
      const Node* n = topo_a.find(e.node);
      if (!n || n->zone != Zone::Dmz || n->kind != NodeKind::Server) continue;
      if (leader.empty()) {
        leader = e.node;
        leader_bytes = e.processed_bytes;
        break;
      }
    }
    std::ostringstream d;
    d << "top DMZ security server: " << leader << " (" << leader_bytes / 1e6 << " MB)";
    report(4, "activity monitor hotspot", leader == "utm_db_act_mon" && leader_bytes > 0.0,
           d.str());
  }

  // Criterion 5: queueing oracles.
  {
    // Single M/M/1 station: lambda 8/s, mu 10/s, ample capacity.
    Engine eng;
    NodeUsage usage;
    Node node;
    node.id = "mm1";
    node.kind = NodeKind::Server;
    node.roles = {ServiceRole::DwDm};
    node.service_rate = 10.0;
    node.queue_capacity = 1000000;
    node.zone = Zone::BiCloud;
    node.service_time = ServiceTimeKind::Exponential;
    Station st(eng, node, 4242, &usage);

    RngStream arrivals(4242, "acceptance-mm1");
    Distribution interarrival = Distribution::exponential(8.0);
    const std::uint64_t target = 100000;
    std::function<void()> next = [&] {
      st.arrive(StationJob{1.0, 0.0, false, nullptr});
      if (usage.arrivals < target + 20000) {
        eng.schedule_in(draw(arrivals, interarrival), EventKind::Arrival, next);
      }
    };
    eng.schedule_in(draw(arrivals, interarrival), EventKind::Arrival, next);
    eng.run(StopCondition::exhaust());
    double sojourn = usage.mean_sojourn();
    bool mm1_ok = usage.departures >= target && std::abs(sojourn - 0.5) / 0.5 <= 0.05;

    // Little's law at every station of the Model B reference run.
    bool little_ok = true;
    std::string worst_node;
    double worst_gap = 0.0;
    for (const auto& [id, n] : rb.nodes) {
      double L = n.occupancy_integral / rb.horizon;
      double XW = n.sojourn_sum / rb.horizon;
      if (L == 0.0 && XW == 0.0) continue;
      double gap = std::abs(L - XW) / std::max(L, XW);
      if (gap > worst_gap) {
        worst_gap = gap;
        worst_node = id;
      }
      if (gap > 0.05) little_ok = false;
    }
    std::ostringstream d;
    d << "M/M/1 sojourn=" << sojourn << "s over " << usage.departures
      << " completions (target 0.5s); worst Little gap " << worst_gap * 100.0 << "% at "
      << (worst_node.empty() ? "-" : worst_node);
    report(5, "queueing oracles", mm1_ok && little_ok, d.str());
  }

  // Criterion 6: the resolver equals exhaustive path enumeration; injected
  // cycles and bypasses are always caught.
  {
    int mismatches = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto inst = bisim::testing::random_routing_instance(seed);
      auto oracle =
          bisim::testing::enumerate_rule_paths(inst.topo, inst.rules, inst.src, inst.target);
      try {
        ServiceChain chain = resolve_chain(inst.topo, inst.rules, inst.src, inst.target);
        if (oracle.empty() || chain.path != oracle.front()) ++mismatches;
      } catch (const SimError&) {
        if (!oracle.empty()) ++mismatches;
      }
    }

    int cycles_missed = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      auto inst = bisim::testing::cycle_routing_instance(seed);
      try {
        resolve_chain(inst.topo, inst.rules, inst.src, inst.target);
        ++cycles_missed;
      } catch (const CycleDetected&) {
      } catch (const SimError&) {
        ++cycles_missed;
      }
    }

    int bypasses_missed = 0;
    CalibrationParams small;
    small.client_count = 2;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto inst = bisim::testing::bypass_routing_instance(seed, small, ServiceRole::DwDm);
      ReachabilityReport r =
          check_reachability(inst.topo, inst.rules, default_mandated_roles(inst.topo));
      bool flagged = false;
      for (const auto& pair : r.pairs) {
        if (pair.target_role == ServiceRole::DwDm && pair.reachable && pair.security_bypassed) {
          flagged = true;
        }
      }
      if (!flagged) ++bypasses_missed;
    }

    std::ostringstream d;
    d << "200 randomized instances, mismatches=" << mismatches << "; cycles missed "
      << cycles_missed << "/30; bypasses missed " << bypasses_missed << "/20";
    report(6, "routing oracle", mismatches == 0 && cycles_missed == 0 && bypasses_missed == 0,
           d.str());
  }

  // Criterion 7: determinism and conservation.
  {
    TimedRun a2 = timed_run(cfg_a);
    TimedRun b2 = timed_run(cfg_b);
    bool bytes_equal =
        export_report(ra, ExportFormat::Json) == export_report(a2.result.report, ExportFormat::Json) &&
        export_report(ra, ExportFormat::Csv) == export_report(a2.result.report, ExportFormat::Csv) &&
        export_report(rb, ExportFormat::Json) == export_report(b2.result.report, ExportFormat::Json);

    bool conserved = true;
    bool drops_invariant = true;
    for (const MetricsReport* r : matrix) {
      if (!conservation_holds(*r)) conserved = false;
      if (!no_retx_without_drops(*r)) drops_invariant = false;
    }
    std::ostringstream d;
    d << "byte-identical reruns=" << (bytes_equal ? "yes" : "no")
      << "; conservation holds on A/B/C=" << (conserved ? "yes" : "no")
      << "; zero drops implies zero retransmissions=" << (drops_invariant ? "yes" : "no");
    report(7, "determinism and conservation", bytes_equal && conserved && drops_invariant, d.str());
  }

  // Criterion 8: security work per request is placement-invariant.
  {
    SecurityCatalog catalog = SecurityCatalog::from_params(cfg_a.calibration);
    Topology topo_a = build_model_a(cfg_a.calibration);
    Topology topo_b = build_model_b(cfg_b.calibration);
    SecurityPlacement pa = SecurityPlacement::build(PlacementMode::Centralized, topo_a, catalog);
    SecurityPlacement pb = SecurityPlacement::build(PlacementMode::Embedded, topo_b, catalog);

    double worst = 0.0;
    for (ServiceRole target : {ServiceRole::DwDm, ServiceRole::OlapDashboards}) {
      ServiceChain chain_a =
          resolve_chain(topo_a, model_rules(Model::A, target), "client_001", target);
      std::vector<std::string> nodes_a = chain_a.path;
      nodes_a.push_back("utm_db_act_mon");  // the tap processes every request too
      ServiceChain chain_b =
          resolve_chain(topo_b, model_rules(Model::B, target), "client_001", target);
      for (bool first : {true, false}) {
        for (double resp : {4000.0, 150000.0}) {
          RequestDemand req;
          req.target_role = target;
          req.request_bytes = 1200.0;
          req.response_bytes = resp;
          req.first_of_session = first;
          double total_a = total_security_demand(pa, catalog, req, nodes_a);
          double total_b = total_security_demand(pb, catalog, req, chain_b.path);
          worst = std::max(worst, std::abs(total_a - total_b));
        }
      }
    }
    std::ostringstream d;
    d << "max |A - B| security seconds per request = " << worst;
    report(8, "work-conservation identity", worst < 1e-9, d.str());
  }

  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return 1;
}
