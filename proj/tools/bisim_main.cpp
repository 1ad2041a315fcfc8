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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bisim/errors.hpp"
#include "bisim/scenario.hpp"
#include "bisim/security.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct GlobalOpts {
  bool json = false;
  std::string out_dir;
};

std::string default_out_dir() {
  const char* env = std::getenv("BISIM_OUT_DIR");
  return env && *env ? env : ".";
}

void emit_error(const GlobalOpts& opts, const std::string& kind, const std::string& message) {
  if (opts.json) {
    ordered_json j;
    j["error"] = {{"kind", kind}, {"message", message}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cerr << "error (" << kind << "): " << message << "\n";
  }
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bisim::ParseError("cannot write " + path.string());
  out << bytes;
}

struct WrittenReport {
  fs::path json_path;
  fs::path csv_path;
};

WrittenReport write_report(const bisim::RunResult& result, const fs::path& dir,
                           const std::string& stem) {
  fs::create_directories(dir);
  WrittenReport w;
  w.json_path = dir / (stem + ".report.json");
  w.csv_path = dir / (stem + ".report.csv");
  write_file(w.json_path, bisim::export_report(result.report, bisim::ExportFormat::Json));
  write_file(w.csv_path, bisim::export_report(result.report, bisim::ExportFormat::Csv));
  if (!result.raw_samples_csv.empty()) {
    write_file(dir / (stem + ".samples.csv"), result.raw_samples_csv);
  }
  if (!result.trace_csv.empty()) {
    write_file(dir / (stem + ".trace.csv"), result.trace_csv);
  }
  return w;
}

void print_report_brief(const bisim::MetricsReport& r) {
  std::cout << "scenario " << r.scenario << " (model " << r.model << ", seed " << r.seed
            << ", horizon " << r.horizon << " s)\n";
  for (const auto& s : r.series) {
    std::cout << "  " << s.name << ": count=" << s.count;
    if (s.defined) {
      std::cout << " mean=" << s.mean << " p95=" << s.p95 << " max=" << s.max;
    }
    std::cout << "\n";
  }
  const auto& c = r.counters;
  std::cout << "  sessions=" << c.sessions_started << " issued=" << c.issued
            << " completed=" << c.completed << " rejected=" << c.rejected
            << " in_flight=" << c.in_flight_at_horizon << " drops=" << c.drops
            << " retransmissions=" << c.retransmissions << "\n";
}

int run_command(const GlobalOpts& opts, const std::string& scenario_path, std::int64_t seed,
                bool raw_samples) {
  bisim::ScenarioConfig cfg = bisim::load_scenario(scenario_path);
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  if (raw_samples) cfg.export_raw_samples = true;

  bisim::RunResult result = bisim::run_scenario(cfg);
  std::string stem = cfg.name + "_seed" + std::to_string(cfg.seed);
  WrittenReport w = write_report(result, opts.out_dir, stem);
  if (opts.json) {
    std::cout << result.report.to_json().dump(2) << "\n";
  } else {
    print_report_brief(result.report);
    std::cout << "wrote " << w.json_path.string() << " and " << w.csv_path.string() << "\n";
  }
  return kExitOk;
}

int compare_command(const GlobalOpts& opts, const std::string& path_a, const std::string& path_b) {
  auto read = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw bisim::ParseError("cannot open report: " + p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return bisim::import_report_json(buf.str());
  };
  bisim::MetricsReport a = read(path_a);
  bisim::MetricsReport b = read(path_b);
  bisim::ComparisonReport cmp = bisim::compare(a, b);
  if (opts.json) {
    std::cout << cmp.to_json().dump(2) << "\n";
  } else {
    std::cout << cmp.to_text();
  }
  return kExitOk;
}

int validate_command(const GlobalOpts& opts, const std::string& scenario_path) {
  bisim::ScenarioConfig cfg = bisim::load_scenario(scenario_path);
  bisim::Model built = cfg.model == bisim::Model::Custom ? bisim::Model::A : cfg.model;
  bisim::Topology topo = bisim::build_model(built, cfg.calibration);
  bisim::ValidationReport report = bisim::validate(topo);

  // Rule reachability: every (client, application role) pair, with bypass
  // detection against the roles mandated by the topology.
  std::map<bisim::ServiceRole, std::vector<bisim::ForwardingRule>> by_class;
  for (const auto& profile : cfg.effective_profiles()) {
    if (!profile.enabled) continue;
    by_class[profile.target_role] = cfg.model == bisim::Model::Custom
                                        ? cfg.custom_rules
                                        : bisim::model_rules(cfg.model, profile.target_role);
  }
  bisim::ReachabilityReport reach =
      bisim::check_reachability_by_class(topo, by_class, bisim::default_mandated_roles(topo));

  if (opts.json) {
    ordered_json j;
    j["scenario"] = cfg.name;
    j["findings"] = ordered_json::array();
    for (const auto& f : report.findings) {
      j["findings"].push_back({{"kind", f.kind}, {"subject", f.subject}, {"message", f.message}});
    }
    j["reachability"] = {{"pairs", reach.pairs.size()},
                         {"reachable", reach.reachable_pairs},
                         {"bypasses", reach.bypass_count}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report.to_text();
    std::cout << reach.to_text();
  }
  return report.clean() ? kExitOk : kExitValidation;
}

int sweep_command(const GlobalOpts& opts, const std::string& scenario_path,
                  const std::string& param, const std::string& values_csv, std::int64_t seed) {
  std::vector<double> values;
  std::stringstream ss(values_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw bisim::ValidationError("sweep values: not a number: " + item);
    }
  }
  if (values.empty()) throw bisim::ValidationError("sweep values: empty list");

  std::ifstream in(scenario_path);
  if (!in) throw bisim::ParseError("cannot open scenario file: " + scenario_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ordered_json base;
  try {
    base = ordered_json::parse(buf.str());
  } catch (const ordered_json::exception& e) {
    throw bisim::ParseError(scenario_path + ": " + e.what());
  }

  ordered_json results = ordered_json::array();
  for (double v : values) {
    ordered_json j = base;
    if (!j.contains("calibration")) j["calibration"] = ordered_json::object();
    j["calibration"][param] = v;
    bisim::ScenarioConfig cfg = bisim::ScenarioConfig::from_json(j);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    std::ostringstream label;
    label << cfg.name << "_" << param << v;
    cfg.name = label.str();
    cfg.validate();

    bisim::RunResult result = bisim::run_scenario(cfg);
    std::string stem = cfg.name + "_seed" + std::to_string(cfg.seed);
    write_report(result, opts.out_dir, stem);

    ordered_json row;
    row[param] = v;
    row["scenario"] = cfg.name;
    for (const char* series : {"db_query_response", "http_object_response"}) {
      if (const auto* s = result.report.find_series(series); s && s->defined) {
        row[series] = s->mean;
      }
    }
    row["drops"] = result.report.counters.drops;
    row["retransmissions"] = result.report.counters.retransmissions;
    results.push_back(std::move(row));
    if (!opts.json) {
      std::cout << param << "=" << v << " -> db="
                << (row.contains("db_query_response") ? row["db_query_response"].dump() : "-")
                << " http="
                << (row.contains("http_object_response") ? row["http_object_response"].dump() : "-")
                << " drops=" << result.report.counters.drops
                << " retx=" << result.report.counters.retransmissions << "\n";
    }
  }
  if (opts.json) std::cout << results.dump(2) << "\n";
  return kExitOk;
}

int calibrate_command(const GlobalOpts& opts, const std::string& out_file) {
  (void)opts;
  bisim::CalibrationParams params = bisim::calibrate_reference();
  bisim::ScenarioConfig probe;
  probe.calibration = params;
  ordered_json j = probe.to_json()["calibration"];
  if (!out_file.empty()) write_file(out_file, j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event comparison of security architectures for cloud-hosted BI"};
  app.require_subcommand(1);

  GlobalOpts opts;
  opts.out_dir = default_out_dir();
  app.add_flag("--json", opts.json, "machine-readable output and errors");

  auto* run = app.add_subcommand("run", "run a scenario and write its reports");
  std::string run_scenario_path;
  std::int64_t run_seed = -1;
  bool run_raw = false;
  run->add_option("--scenario", run_scenario_path, "scenario file")->required();
  run->add_option("--seed", run_seed, "override the scenario seed");
  run->add_option("--out", opts.out_dir, "output directory");
  run->add_flag("--raw-samples", run_raw, "also dump raw samples");

  auto* cmp = app.add_subcommand("compare", "compare two report JSON files");
  std::string cmp_a, cmp_b;
  cmp->add_option("report_a", cmp_a, "first report")->required();
  cmp->add_option("report_b", cmp_b, "second report")->required();

  auto* val = app.add_subcommand("validate", "validate a scenario and its topology");
  std::string val_scenario_path;
  val->add_option("--scenario", val_scenario_path, "scenario file")->required();

  auto* sweep = app.add_subcommand("sweep", "run a scenario across calibration values");
  std::string sweep_scenario_path, sweep_param, sweep_values;
  std::int64_t sweep_seed = -1;
  sweep->add_option("--scenario", sweep_scenario_path, "scenario file")->required();
  sweep->add_option("--param", sweep_param, "calibration field to vary")->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")->required();
  sweep->add_option("--seed", sweep_seed, "override the scenario seed");
  sweep->add_option("--out", opts.out_dir, "output directory");

  auto* cal = app.add_subcommand("calibrate", "search the reference calibration grid");
  std::string cal_out;
  cal->add_option("--out", cal_out, "write the found calibration to a file");

  for (CLI::App* sub : {run, cmp, val, sweep, cal}) {
    sub->add_flag("--json", opts.json, "machine-readable output and errors");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return run_command(opts, run_scenario_path, run_seed, run_raw);
    if (cmp->parsed()) return compare_command(opts, cmp_a, cmp_b);
    if (val->parsed()) return validate_command(opts, val_scenario_path);
    if (sweep->parsed()) {
      return sweep_command(opts, sweep_scenario_path, sweep_param, sweep_values, sweep_seed);
    }
    if (cal->parsed()) return calibrate_command(opts, cal_out);
  } catch (const bisim::ValidationError& e) {
    emit_error(opts, "validation", e.what());
    return kExitValidation;
  } catch (const bisim::ParseError& e) {
    emit_error(opts, "parse", e.what());
    return kExitValidation;
  } catch (const bisim::InvalidCalibration& e) {
    emit_error(opts, "validation", e.what());
    return kExitValidation;
  } catch (const bisim::SimError& e) {
    emit_error(opts, "runtime", e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    emit_error(opts, "internal", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
