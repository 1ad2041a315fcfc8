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

#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "bisim/errors.hpp"
#include "bisim/workload.hpp"

using namespace bisim;

namespace {

TrafficProfile simple_profile() {
  TrafficProfile p;
  p.name = ProfileName::DbQuery;
  p.target_role = ServiceRole::DwDm;
  p.interarrival = Distribution::constant(10.0);
  p.request_bytes = Distribution::constant(1024.0);
  p.response_bytes = Distribution::constant(102400.0);
  p.requests_per_session = Distribution::constant(1.0);
  p.think_time = Distribution::constant(0.0);
  return p;
}

}  // namespace

TEST_CASE("constant interarrival produces an arithmetic schedule") {
  auto schedule = generate_sessions({simple_profile()}, {"c1"}, 35.0, 1);
  REQUIRE(schedule.size() == 3);
  CHECK(schedule[0].at == doctest::Approx(10.0));
  CHECK(schedule[1].at == doctest::Approx(20.0));
  CHECK(schedule[2].at == doctest::Approx(30.0));
}

TEST_CASE("no session starts at or after the horizon") {
  auto schedule = generate_sessions({simple_profile()}, {"c1"}, 30.0, 1);
  CHECK(schedule.size() == 2);  // t=30 is excluded
  for (const auto& s : schedule) CHECK(s.at < 30.0);
}

TEST_CASE("zero clients yield an empty schedule") {
  CHECK(generate_sessions({simple_profile()}, {}, 100.0, 1).empty());
}

TEST_CASE("nonpositive horizon is rejected") {
  CHECK_THROWS_AS(generate_sessions({simple_profile()}, {"c1"}, 0.0, 1), InvalidHorizon);
}

TEST_CASE("poisson session count concentrates around its mean") {
  TrafficProfile p = simple_profile();
  const double rate = 0.05;  // sessions per second per client
  p.interarrival = Distribution::exponential(rate);
  std::vector<std::string> clients;
  for (int i = 0; i < 100; ++i) clients.push_back("client_" + std::to_string(i));
  const double horizon = 2000.0;
  auto schedule = generate_sessions({p}, clients, horizon, 7);

  double mean = 100.0 * rate * horizon;  // 10000
  double sigma = std::sqrt(mean);
  CHECK(std::abs(static_cast<double>(schedule.size()) - mean) < 3.0 * sigma);
}

TEST_CASE("generation is deterministic for a fixed seed") {
  TrafficProfile p = simple_profile();
  p.interarrival = Distribution::exponential(0.1);
  auto a = generate_sessions({p}, {"c1", "c2"}, 500.0, 42);
  auto b = generate_sessions({p}, {"c1", "c2"}, 500.0, 42);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].at == b[i].at);
    CHECK(a[i].client == b[i].client);
  }
  auto c = generate_sessions({p}, {"c1", "c2"}, 500.0, 43);
  CHECK(a.size() != c.size());
}

TEST_CASE("disabled profiles generate nothing") {
  TrafficProfile p = simple_profile();
  p.enabled = false;
  CHECK(generate_sessions({p}, {"c1"}, 100.0, 1).empty());
}

TEST_CASE("a one-request session issues exactly one request") {
  TrafficProfile p = simple_profile();
  Session s(1, "c1", p, 0.0, RngStream(1, "session-test"));
  CHECK(s.planned_requests() == 1);
  auto r1 = s.next_request(0.0, 100);
  REQUIRE(r1.has_value());
  CHECK(r1->id == 100);
  CHECK(r1->session_id == 1);
  CHECK_FALSE(s.next_request(1.0, 101).has_value());
}

TEST_CASE("constant sizes are carried verbatim on every request") {
  TrafficProfile p = simple_profile();
  p.requests_per_session = Distribution::constant(5.0);
  Session s(1, "c1", p, 0.0, RngStream(1, "sizes"));
  for (int i = 0; i < 5; ++i) {
    auto r = s.next_request(static_cast<double>(i), static_cast<std::uint64_t>(i));
    REQUIRE(r.has_value());
    CHECK(r->size_bytes == 1024.0);
    CHECK(r->response_size_bytes == 102400.0);
  }
  CHECK_FALSE(s.next_request(9.0, 9).has_value());
}

TEST_CASE("lognormal response sizes match the analytic mean") {
  TrafficProfile p = simple_profile();
  p.requests_per_session = Distribution::constant(100000.0);
  p.response_bytes = Distribution::lognormal(9.0, 0.4);
  Session s(1, "c1", p, 0.0, RngStream(11, "lognormal-sizes"));
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    auto r = s.next_request(0.0, static_cast<std::uint64_t>(i));
    REQUIRE(r.has_value());
    sum += r->response_size_bytes;
  }
  double analytic = std::exp(9.0 + 0.5 * 0.4 * 0.4);
  CHECK(sum / n == doctest::Approx(analytic).epsilon(0.02));
}

TEST_CASE("profile validation catches non-application targets") {
  TrafficProfile p = simple_profile();
  p.target_role = ServiceRole::CloudSwitch;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}
