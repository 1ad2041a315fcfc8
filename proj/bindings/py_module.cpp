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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bisim/metrics.hpp"
#include "bisim/routing.hpp"
#include "bisim/scenario.hpp"
#include "bisim/security.hpp"
#include "bisim/topology.hpp"

namespace py = pybind11;
using namespace bisim;

namespace {

Model parse_model(const std::string& m) { return model_from_string(m); }

ScenarioConfig scenario_from_json_str(const std::string& text) {
  return ScenarioConfig::from_json(nlohmann::ordered_json::parse(text));
}

std::vector<std::string> topology_chain(const Topology& t, const std::string& model,
                                        const std::string& target_role) {
  Model m = parse_model(model);
  ServiceRole role = service_role_from_string(target_role);
  auto clients = t.nodes_with_role(ServiceRole::Client);
  if (clients.empty()) throw TargetUnreachable("topology has no clients");
  ServiceChain chain = resolve_chain(t, model_rules(m, role), clients.front(), role);
  return chain.path;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discrete-event comparison of security architectures for cloud-hosted BI";

  py::register_exception<SimError>(m, "SimError");

  py::class_<CalibrationParams>(m, "CalibrationParams")
      .def(py::init<>())
      .def_readwrite("client_count", &CalibrationParams::client_count)
      .def_readwrite("olap_count", &CalibrationParams::olap_count)
      .def_readwrite("db_array_count", &CalibrationParams::db_array_count)
      .def_readwrite("rdbms_rate", &CalibrationParams::rdbms_rate)
      .def_readwrite("ldap_rate", &CalibrationParams::ldap_rate)
      .def_readwrite("firewall_rate", &CalibrationParams::firewall_rate)
      .def_readwrite("utm_switch_rate", &CalibrationParams::utm_switch_rate)
      .def_readwrite("monitor_rate", &CalibrationParams::monitor_rate)
      .def_readwrite("olap_rate", &CalibrationParams::olap_rate)
      .def_readwrite("db_rate", &CalibrationParams::db_rate)
      .def_readwrite("dmz_queue_capacity", &CalibrationParams::dmz_queue_capacity)
      .def_readwrite("window_segments", &CalibrationParams::window_segments)
      .def_readwrite("rto_s", &CalibrationParams::rto_s)
      .def_readwrite("max_attempts", &CalibrationParams::max_attempts)
      .def_readwrite("db_response_bytes", &CalibrationParams::db_response_bytes)
      .def_readwrite("http_response_bytes", &CalibrationParams::http_response_bytes)
      .def("validate", &CalibrationParams::validate);

  py::class_<Topology>(m, "Topology")
      .def_property_readonly("name", [](const Topology& t) { return t.name; })
      .def("node_count", [](const Topology& t) { return t.nodes().size(); })
      .def("link_count", [](const Topology& t) { return t.links().size(); })
      .def("node_ids",
           [](const Topology& t) {
             std::vector<std::string> ids;
             for (const auto& n : t.nodes()) ids.push_back(n.id);
             return ids;
           })
      .def("nodes_with_role",
           [](const Topology& t, const std::string& role) {
             return t.nodes_with_role(service_role_from_string(role));
           })
      .def("nodes_in_zone",
           [](const Topology& t, const std::string& zone) {
             return t.nodes_in_zone(zone_from_string(zone));
           })
      .def("validate", [](const Topology& t) {
        std::vector<std::string> out;
        for (const auto& f : validate(t).findings) {
          out.push_back(f.kind + " [" + f.subject + "]: " + f.message);
        }
        return out;
      });

  py::class_<MetricsReport>(m, "MetricsReport")
      .def_property_readonly("scenario", [](const MetricsReport& r) { return r.scenario; })
      .def_property_readonly("model", [](const MetricsReport& r) { return r.model; })
      .def_property_readonly("seed", [](const MetricsReport& r) { return r.seed; })
      .def("series_mean", &MetricsReport::series_mean)
      .def("series_count",
           [](const MetricsReport& r, const std::string& name) {
             const SeriesSummary* s = r.find_series(name);
             if (!s) throw CatalogMismatch("no series " + name);
             return s->count;
           })
      .def("counter",
           [](const MetricsReport& r, const std::string& name) -> std::uint64_t {
             if (name == "issued") return r.counters.issued;
             if (name == "completed") return r.counters.completed;
             if (name == "rejected") return r.counters.rejected;
             if (name == "in_flight_at_horizon") return r.counters.in_flight_at_horizon;
             if (name == "drops") return r.counters.drops;
             if (name == "retransmissions") return r.counters.retransmissions;
             if (name == "sessions_started") return r.counters.sessions_started;
             if (name == "sessions_denied") return r.counters.sessions_denied;
             throw CatalogMismatch("no counter " + name);
           })
      .def("node_utilization",
           [](const MetricsReport& r, const std::string& node) {
             auto it = r.nodes.find(node);
             if (it == r.nodes.end()) throw CatalogMismatch("no node " + node);
             return it->second.utilization(r.horizon);
           })
      .def("to_json", [](const MetricsReport& r) { return export_report(r, ExportFormat::Json); })
      .def("to_csv", [](const MetricsReport& r) { return export_report(r, ExportFormat::Csv); });

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("name", &ScenarioConfig::name)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("horizon_s", &ScenarioConfig::horizon_s)
      .def_readwrite("warmup_fraction", &ScenarioConfig::warmup_fraction)
      .def_readwrite("measurement_windows", &ScenarioConfig::measurement_windows)
      .def_readwrite("calibration", &ScenarioConfig::calibration)
      .def_property(
          "model", [](const ScenarioConfig& c) { return to_string(c.model); },
          [](ScenarioConfig& c, const std::string& m) { c.model = parse_model(m); })
      .def("validate", &ScenarioConfig::validate)
      .def("to_json", [](const ScenarioConfig& c) { return c.to_json().dump(2); })
      .def_static("from_json", &scenario_from_json_str);

  m.def("default_scenario",
        [](const std::string& model) { return default_scenario(parse_model(model)); },
        py::arg("model"));
  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("build_model_a", &build_model_a, py::arg("params"));
  m.def("build_model_b", &build_model_b, py::arg("params"));
  m.def("build_model_c_hybrid", &build_model_c_hybrid, py::arg("params"));
  m.def("reference_chain", &topology_chain, py::arg("topology"), py::arg("model"),
        py::arg("target_role"),
        "Node path a session takes from the first client to the target role");
  m.def("entry_point_count",
        [](const Topology& t, const std::string& model) {
          Model mm = parse_model(model);
          return entry_point_count(t, model_rules(mm, ServiceRole::OlapDashboards));
        },
        py::arg("topology"), py::arg("model"));
  m.def("tier_hop_count",
        [](const Topology& t, const std::string& model, const std::string& target_role) {
          return tier_hops(t, ServiceChain{"", topology_chain(t, model, target_role), {}});
        },
        py::arg("topology"), py::arg("model"), py::arg("target_role"));
  m.def("run_scenario",
        [](const ScenarioConfig& cfg) { return run_scenario(cfg).report; },
        py::arg("config"), "Run a scenario and return its metrics report");
  m.def("hotspot_nodes", [](const MetricsReport& r) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& e : hotspot_report(r)) out.emplace_back(e.node, e.processed_bytes);
    return out;
  });

  m.attr("__version__") = "0.1.0";
}
