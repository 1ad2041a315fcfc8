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

#include <algorithm>
#include <vector>

#include <doctest.h>

#include "bisim/engine.hpp"
#include "bisim/rng.hpp"

using namespace bisim;

TEST_CASE("equal timestamps dispatch in insertion order") {
  Engine eng;
  std::vector<int> order;
  eng.schedule(5.0, EventKind::Generic, [&] { order.push_back(1); });
  eng.schedule(1.0, EventKind::Generic, [&] { order.push_back(2); });
  eng.schedule(5.0, EventKind::Generic, [&] { order.push_back(3); });
  RunSummary s = eng.run(StopCondition::exhaust());
  CHECK(order == std::vector<int>{2, 1, 3});
  CHECK(s.events_dispatched == 3);
  CHECK(s.final_time == doctest::Approx(5.0));
}

TEST_CASE("zero-delay event fires before the clock advances") {
  Engine eng;
  std::vector<double> fired_at;
  eng.schedule(2.0, EventKind::Generic, [&] {
    eng.schedule(eng.now(), EventKind::Generic, [&] { fired_at.push_back(eng.now()); });
    eng.schedule(3.0, EventKind::Generic, [&] { fired_at.push_back(eng.now()); });
  });
  eng.run(StopCondition::exhaust());
  REQUIRE(fired_at.size() == 2);
  CHECK(fired_at[0] == doctest::Approx(2.0));  // the zero-delay one came first
  CHECK(fired_at[1] == doctest::Approx(3.0));
}

TEST_CASE("dispatch sequence equals the sort-by-(time,id) oracle") {
  Engine eng;
  RngStream stream(99, "engine-oracle");
  const int n = 10000;
  std::vector<double> times(n);
  for (int i = 0; i < n; ++i) times[i] = stream.uniform01() * 1000.0;

  std::vector<int> dispatched;
  dispatched.reserve(n);
  for (int i = 0; i < n; ++i) {
    eng.schedule(times[i], EventKind::Generic, [&dispatched, i] { dispatched.push_back(i); });
  }

  // Independent oracle: stable sort of indices by scheduled time.
  std::vector<int> expected(n);
  for (int i = 0; i < n; ++i) expected[i] = i;
  std::stable_sort(expected.begin(), expected.end(),
                   [&](int a, int b) { return times[a] < times[b]; });

  eng.run(StopCondition::exhaust());
  CHECK(dispatched == expected);
  CHECK(eng.pending() == 0);
}

TEST_CASE("clock never decreases across dispatches") {
  Engine eng;
  RngStream stream(5, "clock");
  for (int i = 0; i < 500; ++i) {
    eng.schedule(stream.uniform01() * 50.0, EventKind::Generic, [] {});
  }
  double last = -1.0;
  bool monotone = true;
  eng.set_dispatch_observer([&](SimTime t, Engine::EventId, EventKind) {
    if (t < last) monotone = false;
    last = t;
  });
  eng.run(StopCondition::exhaust());
  CHECK(monotone);
}

TEST_CASE("run with a horizon") {
  SUBCASE("empty calendar still advances to the horizon") {
    Engine eng;
    RunSummary s = eng.run(StopCondition::horizon(100.0));
    CHECK(s.events_dispatched == 0);
    CHECK(s.final_time == doctest::Approx(100.0));
  }
  SUBCASE("events beyond the horizon stay pending") {
    Engine eng;
    int fired = 0;
    eng.schedule(10.0, EventKind::Generic, [&] { ++fired; });
    eng.schedule(200.0, EventKind::Generic, [&] { ++fired; });
    RunSummary s = eng.run(StopCondition::horizon(100.0));
    CHECK(fired == 1);
    CHECK(s.final_time == doctest::Approx(100.0));
    CHECK(eng.pending() == 1);
  }
  SUBCASE("run to exhaustion stops at the last event") {
    Engine eng;
    eng.schedule(7.0, EventKind::Generic, [] {});
    RunSummary s = eng.run(StopCondition::exhaust());
    CHECK(s.events_dispatched == 1);
    CHECK(s.final_time == doctest::Approx(7.0));
    CHECK(eng.pending() == 0);
  }
}

TEST_CASE("scheduling in the past is rejected") {
  Engine eng;
  eng.schedule(5.0, EventKind::Generic, [] {});
  eng.run(StopCondition::exhaust());
  CHECK_THROWS_AS(eng.schedule(1.0, EventKind::Generic, [] {}), SchedulingInPast);
}
