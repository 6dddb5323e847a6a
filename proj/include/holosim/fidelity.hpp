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

#include <cstdint>
#include <optional>
#include <vector>

#include "holosim/core.hpp"
#include "holosim/gates.hpp"
#include "holosim/models.hpp"
#include "holosim/propagate.hpp"

namespace holosim {

struct FidelityStats {
  double max = 0.0;
  double avg = 0.0;
  double min = 0.0;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  /// Step counts summed over every trajectory of the evaluation.
  IntegrationDiagnostics integration;
};

/// e^{iSt} with S = diag(detunings); acts on the full system space.
struct FrameRotation {
  Eigen::VectorXd detunings;

  bool is_identity() const { return detunings.isZero(0.0); }
};

/// S of a model: Δ0, Δ1 (and Δa for the tripod) on the diagonal.
FrameRotation frame_rotation(const SystemModel& model);

/// ρ → e^{iSt} ρ e^{−iSt}.
DensityOperator apply_frame_rotation(const DensityOperator& rho, const FrameRotation& frame,
                                     double t);

/// ⟨χ|U† P ρ_out P† U|χ⟩ with P the projection onto the qubit block.
/// Population outside the qubit block lowers the result.
double gate_fidelity(const DensityOperator& rho_out, const GateTarget& target,
                     const QubitState& chi);

/// How input states are pushed through the model.
enum class PropagationMode {
  /// One trajectory per sampled state.
  kPerState,
  /// Four trajectories spanning the qubit block; every state follows by
  /// linearity of the evolution.
  kProcessBasis,
};

struct FidelityOptions {
  IntegratorConfig integrator;
  PropagationMode mode = PropagationMode::kPerState;
  /// Worker threads; results do not depend on this.
  unsigned workers = 1;
  /// Time origin of the frame rotation. Defaults to the start of the model's
  /// time domain (the preparation time).
  std::optional<double> frame_origin;
  /// Sharpen max/min by local search over the Bloch sphere, seeded at the
  /// best and worst samples.
  bool refine_extrema = true;
  /// Recorded in the result; the sample itself is passed in.
  std::uint64_t seed = 0;
};

/// Integration failure for one sampled input state.
class StateIntegrationFailure : public IntegrationFailure {
 public:
  StateIntegrationFailure(const IntegrationFailure& cause, const QubitState& chi);

  const QubitState& state() const { return chi_; }

 private:
  QubitState chi_;
};

/// Linear map from qubit-block inputs to full-space outputs at readout,
/// after any frame rotation.
class ProcessMap {
 public:
  /// Images of |0⟩⟨0|, |0⟩⟨1|, |1⟩⟨0|, |1⟩⟨1|.
  explicit ProcessMap(std::array<ComplexMatrix, 4> images);

  ComplexMatrix apply(const QubitState& chi) const;
  double fidelity(const GateTarget& target, const QubitState& chi) const;

 private:
  std::array<ComplexMatrix, 4> images_;
};

/// Builds the process map of a model with the given channels.
ProcessMap process_map(const SystemModel& model, const std::vector<Channel>& channels,
                       const FidelityOptions& options, IntegrationDiagnostics* stats = nullptr);

/// Max/avg/min gate fidelity over a sample of input states.
///
/// Each |χ⟩⟨χ| is evolved over the model's time domain, rotated into the
/// co-rotating frame when detunings are present, and compared with U|χ⟩.
/// Throws StateIntegrationFailure naming the offending χ.
FidelityStats fidelity_stats(const SystemModel& model, const std::vector<Channel>& channels,
                             const GateTarget& target, const std::vector<QubitState>& sample,
                             const FidelityOptions& options = {});

struct PerturbativeFidelity {
  double exact = 0.0;
  double second_order = 0.0;
};

/// Fidelity of a single pulse pair with couplings (ω0+δω0, ω1+δω1) and area
/// π + δa against the ideal pair (ω0, ω1) of area π.
///
/// `exact` is |⟨ψ|1 − 2H0² − (1 − cos a)(H̃0² − 2H0²H̃0²)|ψ⟩|². `second_order` is
/// the quadratic expansion in δa and δH0 = H̃0 − H0. The perturbed couplings
/// must already be normalized.
PerturbativeFidelity perturbative_fidelity(const QubitState& psi, Complex omega0, Complex omega1,
                                           Complex d_omega0, Complex d_omega1, double d_area);

/// 1 − δa²/2 − 2(|δω0|² + |δω1|²) + 4|δω0ω0* + δω1ω1*|².
double perturbative_avg(Complex omega0, Complex omega1, Complex d_omega0, Complex d_omega1,
                        double d_area);

/// Haar average of the exact single-pair fidelity, from
/// avg |⟨ψ|M|ψ⟩|² = (tr M†M + |tr M|²)/6.
double exact_average_fidelity(Complex omega0, Complex omega1, Complex d_omega0, Complex d_omega1,
                              double d_area);

}  // namespace holosim
