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

#include <complex>
#include <variant>
#include <vector>

#include "holosim/core.hpp"

namespace holosim {

inline constexpr double kDefaultTruncationRatio = 1e-3;

struct Interval {
  double start = 0.0;
  double end = 0.0;

  double length() const { return end - start; }
  bool contains(double t) const { return t >= start && t <= end; }
};

/// Truncated hyperbolic-secant envelope scale·β·sech(β(t − center)).
///
/// The envelope is exactly zero where sech(β(t − center)) < truncation_ratio.
/// `scale` is 1 for the faithful pulse; area renormalization and pulse-area
/// errors adjust it.
struct SechEnvelope {
  double beta = 1.0;
  double center = 0.0;
  double truncation_ratio = kDefaultTruncationRatio;
  double scale = 1.0;

  /// arcsech(truncation_ratio) / β.
  double half_width() const;
  Interval support() const { return {center - half_width(), center + half_width()}; }
};

/// Constant amplitude on [start, end]; used for integrator checks.
struct RectEnvelope {
  double amplitude = 1.0;
  double start = 0.0;
  double end = 1.0;

  Interval support() const { return {start, end}; }
};

using Envelope = std::variant<SechEnvelope, RectEnvelope>;

/// Pulse length τ = 2·arcsech(ratio)/β of a truncated sech pulse.
double sech_pulse_length(double beta, double truncation_ratio = kDefaultTruncationRatio);

double envelope_value(const Envelope& envelope, double t);
Interval envelope_support(const Envelope& envelope);
/// ∫Ω(t)dt over the support, by adaptive quadrature (relative error < 1e-10).
double envelope_area(const Envelope& envelope);
/// Copy of the envelope rescaled so its area equals `area`.
Envelope with_area(const Envelope& envelope, double area);

/// One pulse pair: shared envelope with couplings (ω0, ω1) on the |0⟩↔|e⟩
/// and |1⟩↔|e⟩ transitions, |ω0|² + |ω1|² = 1.
struct PulsePair {
  Envelope envelope;
  Complex omega0;
  Complex omega1;

  /// Throws InvalidArgument if the couplings are not normalized within 1e-12.
  void validate() const;
};

/// Timed sequence of pulse pairs between preparation and readout.
struct PulseSchedule {
  std::vector<PulsePair> pairs;
  /// Nominal centre-to-centre spacing of consecutive pairs (informational).
  double separation = 0.0;
  double prep_time = 0.0;
  double readout_time = 0.0;

  /// Throws InvalidSchedule on overlapping supports or prep/readout inside a
  /// pulse, InvalidArgument on malformed pairs.
  void validate() const;
};

/// readout − prep for a valid schedule.
double schedule_duration(const PulseSchedule& schedule);

}  // namespace holosim
