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

#include "bisim/transport.hpp"

#include <cmath>

namespace bisim {

std::uint64_t segment_count(double bytes, double mss_bytes) {
  if (bytes <= 0.0) return 1;
  return static_cast<std::uint64_t>(std::ceil(bytes / mss_bytes));
}

SimTime retransmit_at(SimTime sent_at, SimTime loss_at, double rto_s, double backoff,
                      int attempt) {
  double timer = sent_at + rto_s * std::pow(backoff, attempt - 1);
  return std::max(timer, loss_at);
}

Station::Station(Engine& engine, const Node& node, std::uint64_t master_seed, NodeUsage* usage)
    : engine_(&engine),
      id_(node.id),
      service_rate_(node.service_rate),
      service_kind_(node.service_time),
      capacity_(node.queue_capacity),
      service_stream_(master_seed, "service:" + node.id),
      usage_(usage) {
  usage_->zone = to_string(node.zone);
}

void Station::advance_integrals(SimTime now) {
  double dt = now - last_update_;
  if (dt > 0.0) {
    usage_->occupancy_integral += dt * static_cast<double>(occupancy());
    if (busy_) usage_->busy_time += dt;
  }
  last_update_ = now;
}

double Station::draw_base_service() {
  double mean = 1.0 / service_rate_;
  if (service_kind_ == ServiceTimeKind::Deterministic) return mean;
  return -std::log(service_stream_.uniform01_open_low()) * mean;
}

bool Station::arrive(StationJob job) {
  SimTime now = engine_->now();
  advance_integrals(now);
  ++usage_->arrivals;
  if (static_cast<int>(occupancy()) >= capacity_) {
    ++usage_->drops;
    return false;
  }
  usage_->forwarded_bytes += job.bytes;
  if (job.processed) usage_->processed_bytes += job.bytes;
  job.extra_service_s = std::max(job.extra_service_s, 0.0);
  queue_.push_back({std::move(job), now});
  if (!busy_) start_next(now);
  return true;
}

void Station::start_next(SimTime now) {
  if (queue_.empty()) {
    busy_ = false;
    return;
  }
  busy_ = true;
  Pending cur = std::move(queue_.front());
  queue_.pop_front();
  double service = draw_base_service() + cur.job.extra_service_s;
  engine_->schedule(now + service, EventKind::ServiceComplete,
                    [this, cur = std::move(cur)]() mutable {
                      SimTime done = engine_->now();
                      advance_integrals(done);
                      usage_->sojourn_sum += done - cur.arrived_at;
                      ++usage_->departures;
                      busy_ = false;
                      // Start the next queued job before notifying, so any
                      // synchronous re-entry (a response turning around at
                      // its origin station) sees a consistent state.
                      start_next(done);
                      if (cur.job.on_complete) cur.job.on_complete(done);
                    });
}

void Station::finalize(SimTime at) {
  advance_integrals(at);
}

}  // namespace bisim
