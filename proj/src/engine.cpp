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

#include "bisim/engine.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace bisim {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::SessionStart:
      return "session_start";
    case EventKind::RequestIssue:
      return "request_issue";
    case EventKind::Arrival:
      return "arrival";
    case EventKind::ServiceComplete:
      return "service_complete";
    case EventKind::SegmentArrival:
      return "segment_arrival";
    case EventKind::Timeout:
      return "timeout";
    case EventKind::MeasurementTick:
      return "measurement_tick";
    case EventKind::Generic:
      return "generic";
  }
  return "unknown";
}

bool Engine::later(const Scheduled& a, const Scheduled& b) {
  if (a.at != b.at) return a.at > b.at;
  return a.id > b.id;
}

Engine::EventId Engine::schedule(SimTime at, EventKind kind, Callback fn) {
  if (at < now_) {
    std::ostringstream msg;
    msg << "cannot schedule " << to_string(kind) << " at t=" << at << " before now=" << now_;
    throw SchedulingInPast(msg.str());
  }
  EventId id = next_id_++;
  calendar_.push_back(Scheduled{at, id, kind, std::move(fn)});
  std::push_heap(calendar_.begin(), calendar_.end(), later);
  return id;
}

Engine::EventId Engine::schedule_in(SimTime delay, EventKind kind, Callback fn) {
  return schedule(now_ + delay, kind, std::move(fn));
}

RunSummary Engine::run(const StopCondition& stop) {
  RunSummary summary;
  while (!calendar_.empty()) {
    if (stop.has_horizon && calendar_.front().at > stop.at) break;
    std::pop_heap(calendar_.begin(), calendar_.end(), later);
    Scheduled ev = std::move(calendar_.back());
    calendar_.pop_back();

    now_ = ev.at;
    if (observer_) observer_(ev.at, ev.id, ev.kind);
    if (ev.fn) ev.fn();
    ++summary.events_dispatched;
  }
  if (stop.has_horizon && now_ < stop.at) now_ = stop.at;
  summary.final_time = now_;
  return summary;
}

}  // namespace bisim
