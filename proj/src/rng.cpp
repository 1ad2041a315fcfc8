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

#include "bisim/rng.hpp"

#include <cmath>

#include "bisim/errors.hpp"

namespace bisim {

namespace {

// FNV-1a, so stream names hash identically on every platform.
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::string_view stream_id)
    : state_(mix(master_seed ^ fnv1a(stream_id))), id_(stream_id) {}

std::uint64_t RngStream::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform01_open_low() {
  return 1.0 - uniform01();
}

Distribution Distribution::constant(double value) {
  Distribution d{Kind::Constant, value, 0.0};
  d.validate();
  return d;
}

Distribution Distribution::exponential(double rate) {
  Distribution d{Kind::Exponential, rate, 0.0};
  d.validate();
  return d;
}

Distribution Distribution::uniform(double a, double b) {
  Distribution d{Kind::Uniform, a, b};
  d.validate();
  return d;
}

Distribution Distribution::lognormal(double mu, double sigma) {
  Distribution d{Kind::Lognormal, mu, sigma};
  d.validate();
  return d;
}

void Distribution::validate() const {
  switch (kind) {
    case Kind::Constant:
      if (!std::isfinite(p0)) throw InvalidDistributionParam("constant: value must be finite");
      return;
    case Kind::Exponential:
      if (!(p0 > 0.0)) throw InvalidDistributionParam("exponential: rate must be > 0");
      return;
    case Kind::Uniform:
      if (p0 > p1) throw InvalidDistributionParam("uniform: lower bound exceeds upper bound");
      return;
    case Kind::Lognormal:
      if (p1 < 0.0) throw InvalidDistributionParam("lognormal: sigma must be >= 0");
      return;
  }
  throw InvalidDistributionParam("unknown distribution kind");
}

double Distribution::mean() const {
  switch (kind) {
    case Kind::Constant:
      return p0;
    case Kind::Exponential:
      return 1.0 / p0;
    case Kind::Uniform:
      return 0.5 * (p0 + p1);
    case Kind::Lognormal:
      return std::exp(p0 + 0.5 * p1 * p1);
  }
  return 0.0;
}

std::string to_string(Distribution::Kind kind) {
  switch (kind) {
    case Distribution::Kind::Constant:
      return "constant";
    case Distribution::Kind::Exponential:
      return "exponential";
    case Distribution::Kind::Uniform:
      return "uniform";
    case Distribution::Kind::Lognormal:
      return "lognormal";
  }
  return "unknown";
}

Distribution::Kind distribution_kind_from_string(const std::string& s) {
  if (s == "constant") return Distribution::Kind::Constant;
  if (s == "exponential") return Distribution::Kind::Exponential;
  if (s == "uniform") return Distribution::Kind::Uniform;
  if (s == "lognormal") return Distribution::Kind::Lognormal;
  throw InvalidDistributionParam("unknown distribution kind: " + s);
}

double draw(RngStream& stream, const Distribution& dist) {
  dist.validate();
  switch (dist.kind) {
    case Distribution::Kind::Constant:
      return dist.p0;
    case Distribution::Kind::Exponential:
      return -std::log(stream.uniform01_open_low()) / dist.p0;
    case Distribution::Kind::Uniform:
      return dist.p0 + stream.uniform01() * (dist.p1 - dist.p0);
    case Distribution::Kind::Lognormal: {
      // Box-Muller; the second variate is discarded to keep draws stateless.
      double u1 = stream.uniform01_open_low();
      double u2 = stream.uniform01();
      double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
      return std::exp(dist.p0 + dist.p1 * z);
    }
  }
  throw InvalidDistributionParam("unknown distribution kind");
}

}  // namespace bisim
