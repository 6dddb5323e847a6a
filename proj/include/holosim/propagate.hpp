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

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "holosim/core.hpp"
#include "holosim/errors.hpp"
#include "holosim/models.hpp"

namespace holosim {

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double min_step = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  double safety = 0.9;
  long max_steps = 20'000'000;

  /// Throws InvalidArgument unless 0 < min_step ≤ max_step and tolerances > 0.
  void validate() const;
};

template <typename State>
struct StepResult {
  State y;
  double h_next = 0.0;
  bool accepted = false;
  double error = 0.0;
};

namespace rkf45 {

// Fehlberg 4(5) tableau.
inline constexpr double c2 = 1.0 / 4, c3 = 3.0 / 8, c4 = 12.0 / 13, c5 = 1.0, c6 = 1.0 / 2;
inline constexpr double a21 = 1.0 / 4;
inline constexpr double a31 = 3.0 / 32, a32 = 9.0 / 32;
inline constexpr double a41 = 1932.0 / 2197, a42 = -7200.0 / 2197, a43 = 7296.0 / 2197;
inline constexpr double a51 = 439.0 / 216, a52 = -8.0, a53 = 3680.0 / 513, a54 = -845.0 / 4104;
inline constexpr double a61 = -8.0 / 27, a62 = 2.0, a63 = -3544.0 / 2565, a64 = 1859.0 / 4104,
                        a65 = -11.0 / 40;
// Fourth-order weights (propagated solution).
inline constexpr double b1 = 25.0 / 216, b3 = 1408.0 / 2565, b4 = 2197.0 / 4104, b5 = -1.0 / 5;
// Fifth-order minus fourth-order weights (error estimate).
inline constexpr double e1 = 1.0 / 360, e3 = -128.0 / 4275, e4 = -2197.0 / 75240, e5 = 1.0 / 50,
                        e6 = 2.0 / 55;

}  // namespace rkf45

/// One Runge–Kutta–Fehlberg 4(5) step of y' = rhs(t, y).
///
/// The fourth-order solution is propagated; the embedded fifth-order result
/// only drives the error estimate. A step is accepted when
/// max|y5 − y4| ≤ abs_tol + rel_tol·max|y|. The next step is
/// h·safety·(tol/err)^{1/5}, clamped to [0.2, 5]·h and to [min_step, max_step].
/// Throws IntegrationFailure when a step of size ≤ min_step is rejected.
template <typename State, typename Rhs>
StepResult<State> adaptive_step(const Rhs& rhs, const State& y, double t, double h,
                                const IntegratorConfig& cfg) {
  using namespace rkf45;
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + c2 * h, (y + h * (a21 * k1)).eval());
  const State k3 = rhs(t + c3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
  const State k4 = rhs(t + c4 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
  const State k5 = rhs(t + c5 * h, (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
  const State k6 =
      rhs(t + c6 * h, (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());

  StepResult<State> out;
  out.y = (y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5)).eval();
  out.error = (h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6)).cwiseAbs().maxCoeff();
  const double scale = std::max(y.cwiseAbs().maxCoeff(), out.y.cwiseAbs().maxCoeff());
  const double tol = cfg.abs_tol + cfg.rel_tol * scale;
  out.accepted = out.error <= tol;

  double factor = 5.0;
  if (out.error > 0) factor = std::clamp(cfg.safety * std::pow(tol / out.error, 0.2), 0.2, 5.0);
  out.h_next = std::clamp(h * factor, cfg.min_step, cfg.max_step);

  if (!out.accepted && h <= cfg.min_step) {
    throw IntegrationFailure("step size underflow below min_step",
                             IntegrationDiagnostics{0, 1, t, h});
  }
  return out;
}

/// Integrates y' = rhs(t, y) from t0 to exactly t1.
///
/// `h` is the initial step on entry and the last proposed step on exit.
/// `on_accept(y)` may project the state after every accepted step.
template <typename State, typename Rhs, typename OnAccept>
State integrate(const Rhs& rhs, State y, double t0, double t1, double& h,
                const IntegratorConfig& cfg, IntegrationDiagnostics& stats,
                const OnAccept& on_accept) {
  double t = t0;
  h = std::clamp(h, cfg.min_step, cfg.max_step);
  while (t < t1) {
    if (stats.accepted_steps + stats.rejected_steps >= cfg.max_steps) {
      stats.last_time = t;
      stats.last_step = h;
      throw IntegrationFailure("maximum number of steps exceeded", stats);
    }
    const double remaining = t1 - t;
    const bool landing = h >= remaining;
    const double step = landing ? remaining : h;
    StepResult<State> r;
    try {
      if (step < cfg.min_step) {
        // Final sliver below min_step: take it at its true size.
        IntegratorConfig sliver = cfg;
        sliver.min_step = sliver.max_step = step;
        sliver.abs_tol = std::numeric_limits<double>::infinity();
        r = adaptive_step(rhs, y, t, step, sliver);
      } else {
        r = adaptive_step(rhs, y, t, step, cfg);
      }
    } catch (const IntegrationFailure&) {
      stats.rejected_steps += 1;
      stats.last_time = t;
      stats.last_step = step;
      throw IntegrationFailure("step size underflow below min_step", stats);
    }
    if (r.accepted) {
      y = std::move(r.y);
      on_accept(y);
      t = landing ? t1 : t + step;
      ++stats.accepted_steps;
      // Do not let a short landing step shrink the next proposal.
      h = landing ? std::max(h, r.h_next) : r.h_next;
    } else {
      ++stats.rejected_steps;
      h = r.h_next;
    }
  }
  stats.last_time = t1;
  stats.last_step = h;
  return y;
}

/// States sampled at segment boundaries and requested times, plus step counts.
template <typename State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  IntegrationDiagnostics stats;

  const State& final_state() const { return states.back(); }
};

/// Solves iψ' = H(t)ψ from t0 to t1.
///
/// Envelope support edges and loop vertices are integration break-points.
/// Undriven stretches are applied in closed form (diagonal detuning phase).
/// Recorded states are renormalized.
Trajectory<StateVector> evolve_state(const SystemModel& model, const StateVector& psi0, double t0,
                                     double t1, const IntegratorConfig& cfg,
                                     std::span<const double> sample_times = {});

/// Integrates the master equation from t0 to t1.
///
/// The state is symmetrized after every accepted step. Throws
/// NumericalInstability if a recorded state is not a valid density operator:
/// trace drift above 1e-8 or an eigenvalue below −1e-7.
Trajectory<DensityOperator> evolve_density(const SystemModel& model,
                                           const std::vector<Channel>& channels,
                                           const DensityOperator& rho0, double t0, double t1,
                                           const IntegratorConfig& cfg,
                                           std::span<const double> sample_times = {});

}  // namespace holosim
