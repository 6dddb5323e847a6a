// Copyright 2026 The holosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace holosim {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pulse schedule violates its timing invariants (overlapping supports, or
/// preparation/readout inside a pulse).
class InvalidSchedule : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Step bookkeeping carried by every integration result and failure.
struct IntegrationDiagnostics {
  long accepted_steps = 0;
  long rejected_steps = 0;
  double last_time = 0.0;
  double last_step = 0.0;
};

class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(const std::string& what, IntegrationDiagnostics diagnostics)
      : std::runtime_error(what), diagnostics_(diagnostics) {}

  const IntegrationDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  IntegrationDiagnostics diagnostics_;
};

/// Density operator lost positivity beyond tolerance during integration.
class NumericalInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace holosim
