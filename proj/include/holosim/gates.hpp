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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holosim/core.hpp"
#include "holosim/loop.hpp"
#include "holosim/models.hpp"
#include "holosim/pulses.hpp"

namespace holosim {

/// Unit vector n = (sinθ cosφ, sinθ sinφ, cosθ).
class BlochAxis {
 public:
  /// Throws InvalidArgument unless ‖n‖ = 1 within 1e-12.
  explicit BlochAxis(const RealVector3& n);
  static BlochAxis from_angles(double theta, double phi);

  const RealVector3& vector() const { return n_; }
  double theta() const;
  double phi() const;

 private:
  RealVector3 n_;
};

/// 2×2 unitary; fidelity comparisons do not see its global phase.
class GateTarget {
 public:
  /// Throws InvalidArgument unless unitary within 1e-12.
  explicit GateTarget(const QubitMatrix& matrix);

  const QubitMatrix& matrix() const { return matrix_; }

 private:
  QubitMatrix matrix_;
};

/// Axis n with |d⟩⟨d| − |b⟩⟨b| = n·σ on the qubit block, i.e. the Bloch vector
/// of the dark state −ω1|0⟩ + ω0|1⟩. ω1 = 0 gives θ = π.
BlochAxis axis_from_couplings(Complex omega0, Complex omega1);
/// (ω0, ω1) = (−sin(θ/2)e^{iφ}, cos(θ/2)); inverse of axis_from_couplings.
std::pair<Complex, Complex> couplings_from_axis(const BlochAxis& n);

/// n·σ.
GateTarget ideal_gate(const BlochAxis& n);
/// (m·σ)(n·σ) = m·n + iσ·(m×n): the n pair acts first.
GateTarget compose(const BlochAxis& m, const BlochAxis& n);

/// 1 − |tr(A†B)|²/4: zero iff A and B agree up to a global phase.
double phase_invariant_infidelity(const QubitMatrix& a, const QubitMatrix& b);

/// Signed Γ = ∮(1 − cos ϑ) dφ along the piecewise-linear path.
/// Throws InvalidArgument for an open loop.
double loop_solid_angle(const AdiabaticLoop& loop);

/// Adiabatic holonomy of one loop on the qubit block.
///
/// U1 family: diag(1, e^{−iΓ/2}). U2 family: e^{−iΓσ_y}, the rotation of the
/// dark plane by Γ under parallel transport.
QubitMatrix loop_holonomy(const AdiabaticLoop& loop);
/// Product of the loop holonomies, first loop rightmost.
GateTarget holonomy_gate(const std::vector<AdiabaticLoop>& loops);

enum class GatePreset { kPhasePi2, kHadamard };

std::string_view preset_name(GatePreset preset);
/// `phase-pi-2` or `hadamard`; throws InvalidArgument otherwise.
GatePreset parse_gate_preset(std::string_view name);

enum class Scheme { kNonAdiabatic, kAdiabatic };

std::string_view scheme_name(Scheme scheme);
/// `na` or `a`.
Scheme parse_scheme(std::string_view name);

/// diag(1, i) or the Hadamard matrix.
GateTarget gate_target(GatePreset preset);

/// Pulse axes of a preset, in application order.
std::vector<BlochAxis> preset_axes(GatePreset preset);

struct NonAdiabaticTiming {
  /// Sech bandwidth β.
  double beta = 1.0;
  /// Centre-to-centre spacing t_s of consecutive pairs.
  double separation = 0.0;
  /// Idle time between preparation and the first support edge.
  double prep_offset = 0.0;
  /// Idle time between the last support edge and readout.
  double readout_offset = 0.0;
  double truncation_ratio = kDefaultTruncationRatio;
  /// Rescale each truncated envelope to area exactly π.
  bool renormalize_area = false;
};

/// Sech pulse pairs for the given axes. The first pulse is centred at t = 0.
/// Throws InvalidSchedule when consecutive supports overlap.
PulseSchedule compile_nonadiabatic(const std::vector<BlochAxis>& axes,
                                   const NonAdiabaticTiming& timing);
/// Preset couplings: π/2 uses (−1,1)/√2 then (−1,e^{−iπ/4})/√2; Hadamard a
/// single pair (1, √2−1)/√(2(2−√2)).
PulseSchedule compile_nonadiabatic(GatePreset preset, const NonAdiabaticTiming& timing);

/// Loops of an adiabatic preset in traversal order.
///
/// π/2: U1 loop (0,0)→(0,π)→(π/2,π)→(π/2,0)→(0,0), Γ = −π.
/// Hadamard: U2 loop (0,0)→(π/2,0)→(π/2,−π/4)→(0,−π/4)→(0,0), then
/// U1 loop (0,0)→(π/2,0)→(π/2,2π)→(0,2π)→(0,0).
std::vector<AdiabaticLoop> preset_loops(GatePreset preset);

struct TripodDetunings {
  double delta0 = 0.0;
  double delta1 = 0.0;
  double delta_aux = 0.0;
};

TripodModel compile_adiabatic(const std::vector<AdiabaticLoop>& loops, double coupling,
                              double run_time, LoopTiming timing = LoopTiming::kTotalByLength,
                              const TripodDetunings& detunings = {});
TripodModel compile_adiabatic(GatePreset preset, double coupling, double run_time,
                              LoopTiming timing = LoopTiming::kTotalByLength,
                              const TripodDetunings& detunings = {});

}  // namespace holosim
