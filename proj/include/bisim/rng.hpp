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
#include <string>
#include <string_view>

namespace bisim {

/// Deterministic random stream derived from (master_seed, stream_id).
///
/// Every stochastic purpose in a run gets its own named stream, so adding a
/// new random source never perturbs the draw sequence of existing ones.
/// The generator is splitmix64; samples are produced by inverse transform
/// from 53-bit uniforms, so the same (seed, id, draw index) yields the same
/// value on every platform.
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t master_seed, std::string_view stream_id);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform01();

  /// Uniform double in (0, 1]; safe as a log() argument.
  double uniform01_open_low();

  const std::string& stream_id() const { return id_; }

 private:
  std::uint64_t state_ = 0x9e3779b97f4a7c15ULL;
  std::string id_;
};

struct Distribution {
  enum class Kind { Constant, Exponential, Uniform, Lognormal };

  Kind kind = Kind::Constant;
  double p0 = 0.0;  // value | rate | lower bound | mu
  double p1 = 0.0;  // unused | unused | upper bound | sigma

  static Distribution constant(double value);
  static Distribution exponential(double rate);
  static Distribution uniform(double a, double b);
  static Distribution lognormal(double mu, double sigma);

  /// Throws InvalidDistributionParam (rate <= 0, a > b, sigma < 0).
  void validate() const;

  double mean() const;

  bool operator==(const Distribution&) const = default;
};

std::string to_string(Distribution::Kind kind);
Distribution::Kind distribution_kind_from_string(const std::string& s);

/// Samples the distribution, advancing only this stream's state.
double draw(RngStream& stream, const Distribution& dist);

}  // namespace bisim
