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

#include <cstdint>
#include <deque>
#include <functional>
#include <string>

#include "bisim/engine.hpp"
#include "bisim/metrics.hpp"
#include "bisim/rng.hpp"
#include "bisim/topology.hpp"

namespace bisim {

/// Fixed-window reliable transport state for one session.
struct Connection {
  std::uint64_t id = 0;
  std::string client_endpoint;
  std::string server_endpoint;
  double mss_bytes = 1460.0;
  int window_segments = 64;
  double rto_s = 1.0;
  double backoff = 2.0;
  int max_attempts = 6;
  std::uint64_t retransmission_count = 0;
};

/// One transmission unit of a request or response.
struct Segment {
  std::uint64_t id = 0;
  std::uint64_t connection = 0;
  double bytes = 0.0;
  int attempt = 0;  // attempts used so far; first transmission is attempt 1
  SimTime enqueued_at = -1.0;
  SimTime first_sent_at = -1.0;
  SimTime last_sent_at = -1.0;
  SimTime delivered_at = -1.0;
  bool delivered = false;
};

/// Number of segments a payload splits into.
std::uint64_t segment_count(double bytes, double mss_bytes);

/// Retransmission backoff: when the k-th attempt (1-based) is lost, the next
/// one fires at sent_at + rto * backoff^(k-1), or at the loss instant if the
/// timer already expired while the segment sat in upstream queues.
SimTime retransmit_at(SimTime sent_at, SimTime loss_at, double rto_s, double backoff, int attempt);

struct StationJob {
  double bytes = 0.0;
  double extra_service_s = 0.0;             // security surcharge on top of the base draw
  bool processed = false;                   // counts toward processed_bytes
  std::function<void(SimTime)> on_complete; // fired at service completion
};

/// Single-server FIFO queue with finite capacity; the unit of contention in
/// the network. Capacity counts the job in service, so capacity 0 drops
/// everything. Base service time is deterministic or exponential at the
/// node's rate; usage integrals accumulate in the bound NodeUsage.
class Station {
 public:
  Station(Engine& engine, const Node& node, std::uint64_t master_seed, NodeUsage* usage);

  /// Returns false when the queue is full; the job is dropped and counted.
  bool arrive(StationJob job);

  const std::string& node_id() const { return id_; }
  std::size_t occupancy() const { return queue_.size() + (busy_ ? 1 : 0); }

  /// Closes the occupancy/busy integrals at end of run.
  void finalize(SimTime at);

 private:
  struct Pending {
    StationJob job;
    SimTime arrived_at = 0.0;
  };

  void start_next(SimTime now);
  double draw_base_service();
  void advance_integrals(SimTime now);

  Engine* engine_;
  std::string id_;
  double service_rate_;
  ServiceTimeKind service_kind_;
  int capacity_;
  RngStream service_stream_;
  NodeUsage* usage_;
  std::deque<Pending> queue_;
  bool busy_ = false;
  SimTime last_update_ = 0.0;
};

}  // namespace bisim
