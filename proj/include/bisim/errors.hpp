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

#include <stdexcept>
#include <string>

namespace bisim {

/// Base class for every error raised by the simulator library.
class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchedulingInPast : public SimError {
 public:
  using SimError::SimError;
};

class InvalidDistributionParam : public SimError {
 public:
  using SimError::SimError;
};

class InvalidCalibration : public SimError {
 public:
  using SimError::SimError;
};

class NoMatchingRule : public SimError {
 public:
  using SimError::SimError;
};

class CycleDetected : public SimError {
 public:
  using SimError::SimError;
};

class TargetUnreachable : public SimError {
 public:
  using SimError::SimError;
};

class UnresolvedChain : public SimError {
 public:
  using SimError::SimError;
};

class InvalidHorizon : public SimError {
 public:
  using SimError::SimError;
};

class NonMonotonicTime : public SimError {
 public:
  using SimError::SimError;
};

class CatalogMismatch : public SimError {
 public:
  using SimError::SimError;
};

class UnsupportedFormat : public SimError {
 public:
  using SimError::SimError;
};

class ParseError : public SimError {
 public:
  using SimError::SimError;
};

class ValidationError : public SimError {
 public:
  using SimError::SimError;
};

class CalibrationInfeasible : public SimError {
 public:
  using SimError::SimError;
};

}  // namespace bisim
