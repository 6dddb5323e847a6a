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

#include "holosim/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace holosim {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0)) throw InvalidArgument("integrator tolerances must be positive");
  if (!(min_step > 0) || !(min_step <= max_step)) {
    throw InvalidArgument("integrator needs 0 < min_step <= max_step");
  }
  if (!(safety > 0) || max_steps <= 0) throw InvalidArgument("invalid integrator safety or step limit");
}

namespace {

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

/// Integration segment boundaries: model break-points and sample times
/// clipped to [t0, t1].
std::vector<double> segment_grid(const SystemModel& model, double t0, double t1,
                                 std::span<const double> sample_times) {
  std::vector<double> grid{t0, t1};
  for (double t : breakpoints(model)) {
    if (t > t0 && t < t1) grid.push_back(t);
  }
  for (double t : sample_times) {
    if (t < t0 || t > t1) throw InvalidArgument("sample time outside the integration interval");
    grid.push_back(t);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

bool is_sample_time(std::span<const double> sample_times, double t) {
  return std::find(sample_times.begin(), sample_times.end(), t) != sample_times.end();
}

bool is_breakpoint(const std::vector<double>& model_breaks, double t) {
  return std::find(model_breaks.begin(), model_breaks.end(), t) != model_breaks.end();
}

double initial_step(double a, double b, const IntegratorConfig& cfg) {
  return std::clamp((b - a) / 64.0, cfg.min_step, cfg.max_step);
}

void check_interval(const SystemModel& model, double t0, double t1) {
  const Interval domain = time_domain(model);
  if (!(t0 <= t1)) throw InvalidArgument("evolution interval must satisfy t0 <= t1");
  if (t0 < domain.start || t1 > domain.end) {
    throw InvalidArgument("evolution interval outside the model time domain");
  }
}

DensityOperator checked_density(const ComplexMatrix& rho, double t) {
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > DensityOperator::kTraceTol) {
    throw NumericalInstability("trace drift " + fmt_double(trace - 1.0) + " at t = " +
                               std::to_string(t));
  }
  const double lowest = min_eigenvalue(rho);
  if (lowest < -DensityOperator::kPositivityTol) {
    throw NumericalInstability("negative eigenvalue " + fmt_double(lowest) + " at t = " +
                               std::to_string(t));
  }
  return DensityOperator(rho);
}

}  // namespace

Trajectory<StateVector> evolve_state(const SystemModel& model, const StateVector& psi0, double t0,
                                     double t1, const IntegratorConfig& cfg,
                                     std::span<const double> sample_times) {
  cfg.validate();
  check_interval(model, t0, t1);
  if (psi0.dim() != dimension(model)) throw InvalidArgument("state dimension does not match model");

  const Eigen::VectorXd detuning = detuning_diagonal(model);
  const std::vector<double> model_breaks = breakpoints(model);
  const auto rhs = [&model](double t, const ComplexVector& psi) -> ComplexVector {
    return -kI * (hamiltonian_unchecked(model, t) * psi);
  };

  Trajectory<StateVector> out;
  out.times.push_back(t0);
  out.states.push_back(psi0);
  ComplexVector psi = psi0.amplitudes();
  const std::vector<double> grid = segment_grid(model, t0, t1, sample_times);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = grid[i - 1];
    const double b = grid[i];
    if (!is_driven(model, a, b)) {
      for (int k = 0; k < psi.size(); ++k) psi(k) *= std::polar(1.0, -detuning(k) * (b - a));
    } else {
      double h = initial_step(a, b, cfg);
      psi = integrate(rhs, psi, a, b, h, cfg, out.stats, [](ComplexVector&) {});
    }
    if (i + 1 == grid.size() || is_sample_time(sample_times, b) || is_breakpoint(model_breaks, b)) {
      out.times.push_back(b);
      out.states.push_back(StateVector::normalized(psi));
    }
  }
  return out;
}

Trajectory<DensityOperator> evolve_density(const SystemModel& model,
                                           const std::vector<Channel>& channels,
                                           const DensityOperator& rho0, double t0, double t1,
                                           const IntegratorConfig& cfg,
                                           std::span<const double> sample_times) {
  cfg.validate();
  check_interval(model, t0, t1);
  const int dim = dimension(model);
  if (rho0.dim() != dim) throw InvalidArgument("density dimension does not match model");

  const Dissipator dissipator(channels, dim);
  const Eigen::VectorXd detuning = detuning_diagonal(model);
  const std::vector<double> model_breaks = breakpoints(model);
  const auto rhs = [&model, &dissipator](double t, const ComplexMatrix& rho) -> ComplexMatrix {
    const ComplexMatrix h = hamiltonian_unchecked(model, t);
    ComplexMatrix out = -kI * (h * rho - rho * h);
    dissipator.accumulate(rho, out);
    return out;
  };
  const auto symmetrize = [](ComplexMatrix& rho) {
    rho = (0.5 * (rho + rho.adjoint())).eval();
  };

  Trajectory<DensityOperator> out;
  out.times.push_back(t0);
  out.states.push_back(rho0);
  ComplexMatrix rho = rho0.matrix();
  const std::vector<double> grid = segment_grid(model, t0, t1, sample_times);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = grid[i - 1];
    const double b = grid[i];
    if (dissipator.empty() && !is_driven(model, a, b)) {
      for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < dim; ++k) {
          rho(j, k) *= std::polar(1.0, -(detuning(j) - detuning(k)) * (b - a));
        }
      }
    } else {
      double h = initial_step(a, b, cfg);
      rho = integrate(rhs, rho, a, b, h, cfg, out.stats, symmetrize);
    }
    if (i + 1 == grid.size() || is_sample_time(sample_times, b) || is_breakpoint(model_breaks, b)) {
      out.times.push_back(b);
      out.states.push_back(checked_density(rho, b));
    }
  }
  return out;
}

}  // namespace holosim
