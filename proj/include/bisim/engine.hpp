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
#include <functional>
#include <vector>

#include "bisim/errors.hpp"

namespace bisim {

/// Simulated time in seconds. Never decreases while a run dispatches events.
using SimTime = double;

enum class EventKind {
  SessionStart,
  RequestIssue,
  Arrival,
  ServiceComplete,
  SegmentArrival,
  Timeout,
  MeasurementTick,
  Generic,
};

const char* to_string(EventKind kind);

struct RunSummary {
  std::uint64_t events_dispatched = 0;
  SimTime final_time = 0.0;
};

struct StopCondition {
  bool has_horizon = false;
  SimTime at = 0.0;

  static StopCondition horizon(SimTime t) { return {true, t}; }
  static StopCondition exhaust() { return {false, 0.0}; }
};

/// Single-threaded discrete-event kernel: a calendar of timestamped events
/// dispatched in (fire_at, id) order. Ties at equal timestamps break by
/// insertion order, which keeps runs reproducible across platforms.
class Engine {
 public:
  using EventId = std::uint64_t;
  using Callback = std::function<void()>;
  using DispatchObserver = std::function<void(SimTime, EventId, EventKind)>;

  SimTime now() const { return now_; }

  /// Enqueues an event. Throws SchedulingInPast if at < now().
  EventId schedule(SimTime at, EventKind kind, Callback fn);
  EventId schedule_in(SimTime delay, EventKind kind, Callback fn);

  /// Dispatches events until the stop condition is met. With a horizon the
  /// clock advances to the horizon even if the calendar empties first;
  /// events stamped exactly at the horizon still fire.
  RunSummary run(const StopCondition& stop);

  std::size_t pending() const { return calendar_.size(); }

  /// Test/tracing hook invoked for every dispatched event.
  void set_dispatch_observer(DispatchObserver obs) { observer_ = std::move(obs); }

 private:
  struct Scheduled {
    SimTime at = 0.0;
    EventId id = 0;
    EventKind kind = EventKind::Generic;
    Callback fn;
  };

  // Min-heap on (at, id).
  static bool later(const Scheduled& a, const Scheduled& b);

  std::vector<Scheduled> calendar_;
  SimTime now_ = 0.0;
  EventId next_id_ = 1;
  DispatchObserver observer_;
};

}  // namespace bisim
