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

#include <deque>
#include <map>
#include <memory>
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
#include "bisim/workload.hpp"

namespace bisim {

namespace {

struct RequestRuntime;

struct TransferState {
  RequestRuntime* request = nullptr;
  bool is_response = false;
  const std::vector<std::string>* path = nullptr;  // traversal order
  std::vector<Segment> segments;
  std::size_t next_unsent = 0;
  int in_flight = 0;
  std::size_t delivered_count = 0;
};

struct SessionRuntime {
  Session session;
  ServiceChain chain;
  std::vector<std::string> reverse_path;
  Connection conn;
  bool first_request = true;

  SessionRuntime(Session s, ServiceChain c, Connection cn)
      : session(std::move(s)), chain(std::move(c)), conn(std::move(cn)) {
    reverse_path.assign(chain.path.rbegin(), chain.path.rend());
  }
};

struct RequestRuntime {
  Request req;
  SessionRuntime* session = nullptr;
  bool first_of_session = false;
  bool aborted = false;
  TransferState forward;
  TransferState response;
};

/// One simulation run: owns the engine, stations and all live workload
/// state. Everything is driven through the engine's single-threaded
/// dispatch.
class ScenarioRunner {
 public:
  explicit ScenarioRunner(const ScenarioConfig& cfg)
      : cfg_(cfg),
        topo_(build_model(cfg.model == Model::Custom ? Model::A : cfg.model, cfg.calibration)),
        catalog_(SecurityCatalog::from_params(cfg.calibration)),
        placement_(SecurityPlacement::build(placement_mode_for(cfg.model), topo_, catalog_)),
        resolver_(topo_),
        policy_(ZonePolicy::allow_extranet_to_applications()) {
    placement_.validate(topo_);
    profiles_ = cfg.effective_profiles();
    for (const TrafficProfile& p : profiles_) {
      if (p.enabled) rules_[p.name] = rules_for(p.target_role);
    }
    setup_stations();
    setup_tap();
  }

  RunResult run() {
    if (cfg_.horizon_s > 0.0) {
      record_structural_series();
      schedule_sessions();
      engine_.run(StopCondition::horizon(cfg_.horizon_s));
    }
    for (auto& [id, st] : stations_) st.finalize(cfg_.horizon_s);

    RunCounters& c = collector_.counters();
    c.in_flight_at_horizon = c.issued - c.completed - c.rejected;

    ReportMeta meta;
    meta.scenario = cfg_.name;
    meta.model = to_string(cfg_.model);
    meta.seed = cfg_.seed;
    meta.horizon = cfg_.horizon_s;
    meta.warmup_fraction = cfg_.warmup_fraction;
    meta.measurement_windows = cfg_.measurement_windows;
    // Provenance carries the fully resolved configuration, defaults filled.
    ScenarioConfig resolved = cfg_;
    resolved.profiles = profiles_;
    meta.resolved_config = resolved.to_json();

    RunResult result;
    result.report = collector_.summarize(meta);
    if (cfg_.export_raw_samples) {
      result.raw_samples_csv = collector_.export_raw_csv();
      result.trace_csv = export_trace_csv();
    }
    return result;
  }

  /// Realized workload trace, one row per issued request.
  std::string export_trace_csv() const {
    std::ostringstream out;
    out << "request_id,session_id,profile,client,destination,issued_at,request_bytes,"
           "response_bytes,state,completed_at\n";
    for (const RequestRuntime& rr : requests_) {
      const Session& session = rr.session->session;
      const char* state = rr.req.state == RequestState::Completed   ? "completed"
                          : rr.req.state == RequestState::Rejected ? "rejected"
                                                                   : "in_flight";
      out << rr.req.id << "," << rr.req.session_id << "," << to_string(session.profile().name)
          << "," << session.client() << "," << rr.session->chain.destination() << ","
          << nlohmann::ordered_json(rr.req.issued_at).dump() << "," << rr.req.size_bytes << ","
          << rr.req.response_size_bytes << "," << state << ",";
      if (rr.req.completion_time) out << nlohmann::ordered_json(*rr.req.completion_time).dump();
      out << "\n";
    }
    return out.str();
  }

 private:
  std::vector<ForwardingRule> rules_for(ServiceRole target) const {
    if (cfg_.model == Model::Custom) return cfg_.custom_rules;
    return model_rules(cfg_.model, target);
  }

  void setup_stations() {
    for (const Node& n : topo_.nodes()) {
      stations_.emplace(std::piecewise_construct, std::forward_as_tuple(n.id),
                        std::forward_as_tuple(engine_, n, cfg_.seed, &collector_.node(n.id)));
    }
  }

  // Centralized security: the DB activity monitor is not a chain hop; it
  // taps the UTM switch and processes a mirror of everything the switch
  // forwards.
  void setup_tap() {
    if (placement_.mode != PlacementMode::Centralized) return;
    const SecurityService* monitor = catalog_.find(SecurityKind::DbActivityMonitor);
    const std::set<std::string>* monitor_nodes = placement_.nodes_for(SecurityKind::DbActivityMonitor);
    if (!monitor || !monitor_nodes || monitor_nodes->empty()) return;
    auto switches = topo_.nodes_with_role(ServiceRole::UtmSwitch);
    if (switches.empty()) return;
    tap_source_ = switches.front();
    tap_target_ = *monitor_nodes->begin();
    tap_byte_cost_ = monitor->per_byte_cost;
  }

  void record_structural_series() {
    // Stamped at the horizon so the warm-up cut never discards them.
    bool entry_recorded = false;
    for (const TrafficProfile& p : profiles_) {
      if (!p.enabled) continue;
      const auto& rules = rules_.at(p.name);
      if (!entry_recorded) {
        collector_.record("entry_point_count", cfg_.horizon_s,
                          static_cast<double>(entry_point_count(topo_, rules)));
        entry_recorded = true;
      }
      auto clients = topo_.nodes_with_role(ServiceRole::Client);
      if (clients.empty()) continue;
      ChainResolver probe(topo_);
      ServiceChain chain = probe.resolve(rules, clients.front(), p.target_role, to_string(p.name));
      collector_.record("tier_hops", cfg_.horizon_s, static_cast<double>(tier_hops(topo_, chain)));
    }
  }

  void schedule_sessions() {
    auto clients = topo_.nodes_with_role(ServiceRole::Client);
    if (clients.empty()) return;
    auto schedule = generate_sessions(profiles_, clients, cfg_.horizon_s, cfg_.seed);
    for (const SessionStart& start : schedule) {
      engine_.schedule(start.at, EventKind::SessionStart, [this, start] { start_session(start); });
    }
  }

  const TrafficProfile& profile_of(ProfileName name) const {
    for (const TrafficProfile& p : profiles_) {
      if (p.name == name) return p;
    }
    throw ValidationError("profile not configured: " + to_string(name));
  }

  void start_session(const SessionStart& start) {
    const TrafficProfile& profile = profile_of(start.profile);

    if (const SecurityService* fw = catalog_.find(SecurityKind::FirewallAdmission)) {
      Zone client_zone = topo_.at(start.client).zone;
      if (admit(*fw, policy_, client_zone, profile.target_role) == Admission::Deny) {
        ++collector_.counters().sessions_denied;
        return;
      }
    }

    std::uint64_t sid = ++session_seq_;
    ServiceChain chain = resolver_.resolve(rules_.at(profile.name), start.client,
                                           profile.target_role, to_string(profile.name), true);

    Connection conn;
    conn.id = sid;
    conn.client_endpoint = chain.path.front();
    conn.server_endpoint = chain.path.back();
    conn.mss_bytes = cfg_.calibration.mss_bytes;
    conn.window_segments = cfg_.calibration.window_segments;
    conn.rto_s = cfg_.calibration.rto_s;
    conn.backoff = cfg_.calibration.rto_backoff;
    conn.max_attempts = cfg_.calibration.max_attempts;

    RngStream stream(cfg_.seed, "session:" + to_string(profile.name) + ":" + start.client + ":" +
                                    std::to_string(sid));
    sessions_.emplace_back(Session(sid, start.client, profile, start.at, std::move(stream)),
                           std::move(chain), std::move(conn));
    ++collector_.counters().sessions_started;
    issue_next_request(&sessions_.back());
  }

  void issue_next_request(SessionRuntime* srt) {
    SimTime now = engine_.now();
    auto next = srt->session.next_request(now, ++request_seq_);
    if (!next) return;  // session exhausted

    requests_.emplace_back();
    RequestRuntime& rr = requests_.back();
    rr.req = *next;
    rr.session = srt;
    rr.first_of_session = srt->first_request;
    srt->first_request = false;
    ++collector_.counters().issued;

    rr.forward.request = &rr;
    rr.forward.is_response = false;
    rr.forward.path = &srt->chain.path;
    double wire_bytes = rr.req.size_bytes + catalog_.total_added_bytes();
    init_segments(rr.forward, wire_bytes, now);

    pump(&rr.forward);
  }

  void init_segments(TransferState& tr, double bytes, SimTime enqueued_at) {
    double mss = cfg_.calibration.mss_bytes;
    std::uint64_t n = segment_count(bytes, mss);
    tr.segments.resize(n);
    double remaining = bytes;
    for (std::uint64_t i = 0; i < n; ++i) {
      tr.segments[i].id = ++segment_seq_;
      tr.segments[i].connection = tr.request->session->conn.id;
      tr.segments[i].bytes = std::min(mss, remaining);
      tr.segments[i].enqueued_at = enqueued_at;
      remaining -= tr.segments[i].bytes;
    }
  }

  void pump(TransferState* tr) {
    const Connection& conn = tr->request->session->conn;
    while (!tr->request->aborted && tr->in_flight < conn.window_segments &&
           tr->next_unsent < tr->segments.size()) {
      std::size_t idx = tr->next_unsent++;
      ++tr->in_flight;
      send_segment(tr, idx);
    }
  }

  void send_segment(TransferState* tr, std::size_t idx) {
    Segment& seg = tr->segments[idx];
    ++seg.attempt;
    seg.last_sent_at = engine_.now();
    if (seg.attempt == 1) seg.first_sent_at = seg.last_sent_at;
    arrive_at(tr, idx, 0);
  }

  // Security surcharge for one segment at one chain node. Fixed per-request
  // (and per-session) costs ride on the first segment's first attempt in
  // the forward direction; byte-proportional inspection applies to every
  // segment passing an assigned node.
  double surcharge(const TransferState& tr, const Segment& seg, std::size_t idx,
                   const std::string& node) const {
    double extra = 0.0;
    const RequestRuntime& rr = *tr.request;
    ServiceRole target = rr.session->session.profile().target_role;
    for (const SecurityService& svc : catalog_.services) {
      if (!placement_.assigned_to(svc.kind, node)) continue;
      if (!service_applies(svc.kind, target)) continue;
      extra += svc.per_byte_cost * seg.bytes;
      if (!tr.is_response && idx == 0 && seg.attempt == 1) {
        extra += svc.per_request_cost;
        if (rr.first_of_session) extra += svc.per_session_cost;
      }
    }
    return extra;
  }

  void arrive_at(TransferState* tr, std::size_t idx, std::size_t node_idx) {
    const std::string& node = (*tr->path)[node_idx];
    Station& station = stations_.at(node);
    Segment& seg = tr->segments[idx];

    StationJob job;
    job.bytes = seg.bytes;
    job.extra_service_s = surcharge(*tr, seg, idx, node);
    bool is_destination = !tr->is_response ? node_idx + 1 == tr->path->size() : node_idx == 0;
    job.processed = job.extra_service_s > 0.0 || is_destination;
    job.on_complete = [this, tr, idx, node_idx](SimTime done) {
      on_station_complete(tr, idx, node_idx, done);
    };
    if (!station.arrive(std::move(job))) on_drop(tr, idx, node_idx);
  }

  void on_station_complete(TransferState* tr, std::size_t idx, std::size_t node_idx,
                           SimTime done) {
    const std::string& node = (*tr->path)[node_idx];
    Segment& seg = tr->segments[idx];

    if (node == tap_source_) mirror_to_monitor(seg.bytes);

    if (node_idx + 1 < tr->path->size()) {
      const std::string& next = (*tr->path)[node_idx + 1];
      const Link* link = topo_.link_between(node, next);
      if (!link) throw UnresolvedChain("chain nodes not linked: " + node + " - " + next);
      SimTime at = done + seg.bytes * 8.0 / link->bandwidth_bps + link->propagation_s;
      engine_.schedule(at, EventKind::SegmentArrival,
                       [this, tr, idx, node_idx] { arrive_at(tr, idx, node_idx + 1); });
      return;
    }

    // Delivered: the ack is instantaneous on the reverse path.
    seg.delivered = true;
    seg.delivered_at = done;
    collector_.record("tcp_segment_delay", done, done - seg.first_sent_at);
    ++tr->delivered_count;
    --tr->in_flight;
    if (tr->request->aborted) return;

    pump(tr);
    if (tr->delivered_count == tr->segments.size()) {
      if (!tr->is_response) {
        start_response(tr->request, done);
      } else {
        complete_request(tr->request, done);
      }
    }
  }

  void start_response(RequestRuntime* rr, SimTime now) {
    rr->response.request = rr;
    rr->response.is_response = true;
    rr->response.path = &rr->session->reverse_path;
    init_segments(rr->response, rr->req.response_size_bytes, now);
    pump(&rr->response);
  }

  void complete_request(RequestRuntime* rr, SimTime now) {
    rr->req.state = RequestState::Completed;
    rr->req.completion_time = now;
    ++collector_.counters().completed;

    const TrafficProfile& profile = rr->session->session.profile();
    collector_.record(response_series_name(profile.name), now, now - rr->req.issued_at);
    collector_.record("tcp_delay", now, now - rr->forward.segments.front().first_sent_at);
    schedule_next_request(rr->session, now);
  }

  void reject_request(RequestRuntime* rr, SimTime now) {
    rr->req.state = RequestState::Rejected;
    rr->aborted = true;
    ++collector_.counters().rejected;
    schedule_next_request(rr->session, now);
  }

  void schedule_next_request(SessionRuntime* srt, SimTime now) {
    double think = srt->session.draw_think_time();
    SimTime at = now + think;
    if (at >= cfg_.horizon_s) return;  // nothing issues at or after the horizon
    engine_.schedule(at, EventKind::RequestIssue, [this, srt] { issue_next_request(srt); });
  }

  void on_drop(TransferState* tr, std::size_t idx, std::size_t node_idx) {
    (void)node_idx;
    SimTime now = engine_.now();
    collector_.count_drop(now);
    RequestRuntime* rr = tr->request;
    if (rr->aborted) return;

    Segment& seg = tr->segments[idx];
    const Connection& conn = rr->session->conn;
    if (seg.attempt >= conn.max_attempts) {
      reject_request(rr, now);
      return;
    }
    SimTime at = retransmit_at(seg.last_sent_at, now, conn.rto_s, conn.backoff, seg.attempt);
    engine_.schedule(at, EventKind::Timeout, [this, tr, idx] {
      RequestRuntime* req = tr->request;
      if (req->aborted || tr->segments[idx].delivered) return;
      ++req->session->conn.retransmission_count;
      collector_.count_retransmission(engine_.now());
      send_segment(tr, idx);
    });
  }

  void mirror_to_monitor(double bytes) {
    if (tap_target_.empty()) return;
    Station& monitor = stations_.at(tap_target_);
    StationJob job;
    job.bytes = bytes;
    job.extra_service_s = tap_byte_cost_ * bytes;
    job.processed = true;
    monitor.arrive(std::move(job));  // mirror loss is invisible to the flow
  }

  ScenarioConfig cfg_;
  Topology topo_;
  SecurityCatalog catalog_;
  SecurityPlacement placement_;
  ChainResolver resolver_;
  ZonePolicy policy_;
  std::vector<TrafficProfile> profiles_;
  std::map<ProfileName, std::vector<ForwardingRule>> rules_;

  Engine engine_;
  MetricsCollector collector_;
  std::map<std::string, Station> stations_;
  std::deque<SessionRuntime> sessions_;
  std::deque<RequestRuntime> requests_;
  std::uint64_t session_seq_ = 0;
  std::uint64_t request_seq_ = 0;
  std::uint64_t segment_seq_ = 0;

  std::string tap_source_;
  std::string tap_target_;
  double tap_byte_cost_ = 0.0;
};

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  ScenarioRunner runner(cfg);
  return runner.run();
}

}  // namespace bisim
