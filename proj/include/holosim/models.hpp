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
#include <variant>
#include <vector>

#include "holosim/core.hpp"
#include "holosim/loop.hpp"
#include "holosim/pulses.hpp"

namespace holosim {

/// Basis layouts. Λ: (|0⟩,|1⟩,|e⟩,|g⟩). Tripod: (|0⟩,|1⟩,|a⟩,|e⟩,|g⟩).
/// |g⟩ is the decay sink and is present even when no decay is modelled.
namespace lambda_basis {
inline constexpr int kZero = 0, kOne = 1, kExcited = 2, kSink = 3, kDim = 4;
}
namespace tripod_basis {
inline constexpr int kZero = 0, kOne = 1, kAux = 2, kExcited = 3, kSink = 4, kDim = 5;
}

/// Driving-field error of a pulse pair: couplings become normalize(ω + δω)
/// and the envelope is rescaled to the given area.
struct FieldError {
  Complex d_omega0{};
  Complex d_omega1{};
  double area = kPi;
};

/// Applies a field error to one pair. The perturbed couplings are
/// renormalized; the envelope keeps its shape.
PulsePair perturbed_pair(const PulsePair& pair, const FieldError& error);

/// Λ-system driven by a pulse schedule, with optional constant detunings on
/// |0⟩ and |1⟩ and an optional field error applied to every pair.
class LambdaModel {
 public:
  explicit LambdaModel(PulseSchedule schedule, double delta0 = 0.0, double delta1 = 0.0,
                       std::optional<FieldError> field_error = std::nullopt);

  /// Schedule after any field error has been applied.
  const PulseSchedule& schedule() const { return schedule_; }
  double delta0() const { return delta0_; }
  double delta1() const { return delta1_; }
  const std::optional<FieldError>& field_error() const { return field_error_; }

 private:
  PulseSchedule schedule_;
  double delta0_;
  double delta1_;
  std::optional<FieldError> field_error_;
};

enum class LoopTiming {
  /// run_time is the total, split across loops in proportion to path length.
  kTotalByLength,
  /// every loop takes run_time.
  kPerLoop,
};

/// Tripod driven around a sequence of closed loops at constant coupling Ω.
class TripodModel {
 public:
  TripodModel(double coupling, double run_time, std::vector<AdiabaticLoop> loops,
              LoopTiming timing = LoopTiming::kTotalByLength, double delta0 = 0.0,
              double delta1 = 0.0, double delta_aux = 0.0);

  double coupling() const { return coupling_; }
  double run_time() const { return run_time_; }
  double total_time() const { return loop_end_.empty() ? 0.0 : loop_end_.back(); }
  const std::vector<AdiabaticLoop>& loops() const { return loops_; }
  LoopTiming timing() const { return timing_; }
  double delta0() const { return delta0_; }
  double delta1() const { return delta1_; }
  double delta_aux() const { return delta_aux_; }

  /// (ω0, ω1, ωa) at time t.
  std::array<Complex, 3> couplings_at(double t) const;
  /// Loop starts, vertex passages and the final time.
  std::vector<double> breakpoints() const;

 private:
  double coupling_;
  double run_time_;
  std::vector<AdiabaticLoop> loops_;
  LoopTiming timing_;
  double delta0_;
  double delta1_;
  double delta_aux_;
  std::vector<std::vector<double>> fractions_;
  std::vector<double> loop_start_;
  std::vector<double> loop_end_;
};

using SystemModel = std::variant<LambdaModel, TripodModel>;

/// L = √γ |sink⟩⟨source|.
struct DecayChannel {
  double gamma = 0.0;
  int source = lambda_basis::kExcited;
  int sink = lambda_basis::kSink;
};

/// L_k = √ε (|e⟩⟨e| − |k⟩⟨k|) for k ∈ {0, 1}.
struct DephasingChannel {
  double epsilon = 0.0;
  int excited = lambda_basis::kExcited;
};

using Channel = std::variant<DecayChannel, DephasingChannel>;

/// Decay of |e⟩ into |g⟩ in the model's layout.
DecayChannel decay_channel(const SystemModel& model, double gamma);
/// Dephasing in the |0⟩,|e⟩ and |1⟩,|e⟩ bases in the model's layout.
DephasingChannel dephasing_channel(const SystemModel& model, double epsilon);

/// Jump operators of a channel in dimension dim (empty when the rate is 0).
std::vector<ComplexMatrix> jump_operators(const Channel& channel, int dim);

int dimension(const SystemModel& model);
/// [prep, readout] for Λ, [0, total] for the tripod.
Interval time_domain(const SystemModel& model);
/// Sorted times inside the domain where the drive is non-smooth.
std::vector<double> breakpoints(const SystemModel& model);
/// True when some drive is non-zero inside (a, b).
bool is_driven(const SystemModel& model, double a, double b);
/// Diagonal of the detuning operator S (zero entries on |e⟩ and |g⟩).
Eigen::VectorXd detuning_diagonal(const SystemModel& model);

/// Hermitian Hamiltonian at time t; throws InvalidArgument outside the domain.
ComplexMatrix hamiltonian_at(const SystemModel& model, double t);
/// Same without the domain check; used inside integrators.
ComplexMatrix hamiltonian_unchecked(const SystemModel& model, double t);

/// −i[H,ρ] + Σ_L (2LρL† − L†Lρ − ρL†L).
///
/// The dissipator carries the factor 2 on the sandwich term with no overall
/// ½, so L = √γ|g⟩⟨e| empties |e⟩ as e^{−2γt}. Throws InvalidArgument for a
/// non-Hermitian H or mismatched dimensions.
ComplexMatrix lindblad_rhs(const ComplexMatrix& hamiltonian, const std::vector<Channel>& channels,
                           const ComplexMatrix& rho);

/// Precomputed jump operators for repeated right-hand-side evaluation.
class Dissipator {
 public:
  Dissipator(const std::vector<Channel>& channels, int dim);

  bool empty() const { return ops_.empty(); }
  /// Adds the dissipative part of the right-hand side to `out`.
  void accumulate(const ComplexMatrix& rho, ComplexMatrix& out) const;

 private:
  std::vector<ComplexMatrix> ops_;
  std::vector<ComplexMatrix> ops_dagger_;
  std::vector<ComplexMatrix> decay_terms_;
};

/// −ω1|0⟩ + ω0|1⟩ embedded in the Λ layout.
StateVector dark_state(const PulsePair& pair);
/// ω0*|0⟩ + ω1*|1⟩ embedded in the Λ layout.
StateVector bright_state(const PulsePair& pair);

}  // namespace holosim
