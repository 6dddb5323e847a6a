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

#include <fmt/format.h>

#include <cmath>
#include <random>

#include "holosim/sweeps.hpp"

namespace holosim {

namespace {

IntegratorConfig tight() { return IntegratorConfig{1e-11, 1e-13}; }

QubitMatrix simulated_unitary(const LambdaModel& model) {
  const Interval dom = time_domain(model);
  QubitMatrix u;
  for (int j = 0; j < 2; ++j) {
    const auto traj = evolve_state(model, StateVector(basis_ket(lambda_basis::kDim, j)), dom.start,
                                   dom.end, tight());
    u(0, j) = traj.final_state()[0];
    u(1, j) = traj.final_state()[1];
  }
  return u;
}

CheckResult check(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

CheckResult single_pair_gates() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const BlochAxis n = BlochAxis::from_angles(std::acos(1 - 2 * u(rng)), 2 * kPi * u(rng));
    const LambdaModel model(compile_nonadiabatic(std::vector{n}, {.beta = 5.0, .renormalize_area = true}));
    worst = std::max(worst, phase_invariant_infidelity(simulated_unitary(model),
                                                       ideal_gate(n).matrix()));
  }
  return check("single pulse pair realizes n.sigma", worst < 1e-8,
               fmt::format("worst infidelity {:.2e}", worst));
}

CheckResult two_pair_composition() {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const BlochAxis n = BlochAxis::from_angles(std::acos(1 - 2 * u(rng)), 2 * kPi * u(rng));
    const BlochAxis m = BlochAxis::from_angles(std::acos(1 - 2 * u(rng)), 2 * kPi * u(rng));
    const LambdaModel model(
        compile_nonadiabatic(std::vector{n, m}, {.beta = 5.0, .separation = 4.0, .renormalize_area = true}));
    worst = std::max(worst, phase_invariant_infidelity(simulated_unitary(model),
                                                       compose(m, n).matrix()));
  }
  return check("two pulse pairs compose as m.n + i sigma.(m x n)", worst < 1e-8,
               fmt::format("worst infidelity {:.2e}", worst));
}

CheckResult analytic_decay() {
  // Undriven Λ model spanning [0, 1/(2γ)] with γ = 1.
  PulseSchedule schedule;
  schedule.pairs.push_back(
      PulsePair{RectEnvelope{0.0, 0.0, 0.5}, Complex(1.0), Complex(0.0)});
  schedule.prep_time = 0.0;
  schedule.readout_time = 0.5;
  const SystemModel model = LambdaModel(schedule);
  const auto traj = evolve_density(model, {decay_channel(model, 1.0)},
                                   DensityOperator(basis_projector(4, lambda_basis::kExcited)),
                                   0.0, 0.5, IntegratorConfig{});
  const double pop = traj.final_state().population(lambda_basis::kExcited);
  const double err = std::abs(pop - std::exp(-1.0));
  return check("excited population decays as exp(-2 gamma t)", err < 1e-6,
               fmt::format("|error| {:.2e}", err));
}

CheckResult frame_rotation_noop() {
  const auto sample = haar_qubit_sample(4, 5);
  const DensityOperator rho = DensityOperator::pure(embed_qubit(sample[0], 4));
  const DensityOperator out = apply_frame_rotation(rho, FrameRotation{Eigen::VectorXd::Zero(4)}, 3.7);
  const bool same = out.matrix() == rho.matrix();
  return check("frame rotation with zero detuning is exact identity", same, "");
}

CheckResult adiabatic_fixed_point() {
  const TripodModel model = compile_adiabatic(GatePreset::kPhasePi2, 1.0, 7.3);
  const auto traj = evolve_state(model, StateVector(basis_ket(tripod_basis::kDim, 0)), 0.0,
                                 model.total_time(), IntegratorConfig{});
  const double fid = std::norm(traj.final_state()[0]);
  return check("adiabatic pi/2 loop leaves |0> fixed", std::abs(fid - 1.0) < 1e-7,
               fmt::format("|<0|U|0>|^2 = {:.12f}", fid));
}

CheckResult worker_independence() {
  const SweepPoint point = build_point(find_preset("fig4-na-phase"), 20.0);
  const auto sample = haar_qubit_sample(8, 3);
  FidelityOptions one;
  one.integrator = find_preset("fig4-na-phase").integrator;
  one.mode = PropagationMode::kPerState;
  FidelityOptions three = one;
  three.workers = 3;
  const FidelityStats a = fidelity_stats(point.model, point.channels, point.target, sample, one);
  const FidelityStats b = fidelity_stats(point.model, point.channels, point.target, sample, three);
  const bool same = a.max == b.max && a.avg == b.avg && a.min == b.min;
  return check("fidelity statistics independent of worker count", same,
               fmt::format("avg {:.15g} vs {:.15g}", a.avg, b.avg));
}

CheckResult trace_and_positivity() {
  const SweepPoint point = build_point(find_preset("fig4-na-hadamard"), 10.0);
  const auto sample = haar_qubit_sample(3, 9);
  const SystemModel& model = point.model;
  const Interval dom = time_domain(model);
  double trace_drift = 0.0, lowest = 1.0;
  for (const auto& chi : sample) {
    const auto traj = evolve_density(model, point.channels,
                                     DensityOperator::pure(embed_qubit(chi, dimension(model))),
                                     dom.start, dom.end, find_preset("fig4-na-hadamard").integrator);
    for (const auto& rho : traj.states) {
      trace_drift = std::max(trace_drift, std::abs(rho.trace() - 1.0));
      lowest = std::min(lowest, rho.min_eigenvalue());
    }
  }
  return check("trace drift <= 1e-8 and eigenvalues >= -1e-7 along decay trajectories",
               trace_drift <= 1e-8 && lowest >= -1e-7,
               fmt::format("drift {:.2e}, min eigenvalue {:.2e}", trace_drift, lowest));
}

CheckResult first_order_robustness() {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex w0(r), w1(0.0, r);
  const double h = 1e-5;
  const auto f = [&](double d) {
    const Complex p0 = w0 + d * Complex(0.3, -0.2), p1 = w1 + d * Complex(-0.1, 0.4);
    const double n = std::sqrt(std::norm(p0) + std::norm(p1));
    return exact_average_fidelity(w0, w1, p0 / n - w0, p1 / n - w1, 0.7 * d);
  };
  const double slope = (f(h) - f(-h)) / (2 * h);
  return check("average fidelity has no first-order sensitivity", std::abs(slope) < 1e-8,
               fmt::format("dF/d delta = {:.2e}", slope));
}

}  // namespace

std::vector<CheckResult> run_invariant_suite() {
  std::vector<CheckResult> out;
  const auto guarded = [&out](const char* name, CheckResult (*fn)()) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };
  guarded("single pair", single_pair_gates);
  guarded("composition", two_pair_composition);
  guarded("decay", analytic_decay);
  guarded("frame rotation", frame_rotation_noop);
  guarded("adiabatic fixed point", adiabatic_fixed_point);
  guarded("workers", worker_independence);
  guarded("trace and positivity", trace_and_positivity);
  guarded("first order", first_order_robustness);
  return out;
}

}  // namespace holosim
