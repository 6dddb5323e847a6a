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

#include "holosim/fidelity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

namespace holosim {

FrameRotation frame_rotation(const SystemModel& model) { return {detuning_diagonal(model)}; }

namespace {

ComplexMatrix rotate(const ComplexMatrix& rho, const FrameRotation& frame, double t) {
  const int dim = static_cast<int>(rho.rows());
  if (frame.detunings.size() != dim) throw InvalidArgument("frame rotation dimension mismatch");
  ComplexMatrix out = rho;
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      out(j, k) *= std::polar(1.0, (frame.detunings(j) - frame.detunings(k)) * t);
    }
  }
  return out;
}

double block_fidelity(const ComplexMatrix& rho, const GateTarget& target, const QubitState& chi) {
  if (rho.rows() < 2) throw InvalidArgument("output state has no qubit block");
  const QubitVector ideal = target.matrix() * chi.vector();
  const QubitMatrix block = project_qubit_block(rho);
  return std::real(ideal.dot(block * ideal));
}

}  // namespace

DensityOperator apply_frame_rotation(const DensityOperator& rho, const FrameRotation& frame,
                                     double t) {
  if (frame.is_identity()) return rho;
  return DensityOperator(rotate(rho.matrix(), frame, t));
}

double gate_fidelity(const DensityOperator& rho_out, const GateTarget& target,
                     const QubitState& chi) {
  return block_fidelity(rho_out.matrix(), target, chi);
}

StateIntegrationFailure::StateIntegrationFailure(const IntegrationFailure& cause,
                                                 const QubitState& chi)
    : IntegrationFailure(std::string(cause.what()) + " for input state (" +
                             std::to_string(chi.theta()) + ", " + std::to_string(chi.phi()) +
                             ")",
                         cause.diagnostics()),
      chi_(chi) {}

ProcessMap::ProcessMap(std::array<ComplexMatrix, 4> images) : images_(std::move(images)) {}

ComplexMatrix ProcessMap::apply(const QubitState& chi) const {
  const Complex c0 = chi.c0();
  const Complex c1 = chi.c1();
  return std::norm(c0) * images_[0] + (c0 * std::conj(c1)) * images_[1] +
         (c1 * std::conj(c0)) * images_[2] + std::norm(c1) * images_[3];
}

double ProcessMap::fidelity(const GateTarget& target, const QubitState& chi) const {
  return block_fidelity(apply(chi), target, chi);
}

namespace {

struct RunContext {
  const SystemModel& model;
  const std::vector<Channel>& channels;
  const FidelityOptions& options;
  Interval domain;
  FrameRotation frame;
  double frame_time;
};

RunContext make_context(const SystemModel& model, const std::vector<Channel>& channels,
                        const FidelityOptions& options) {
  const Interval domain = time_domain(model);
  const double origin = options.frame_origin.value_or(domain.start);
  return {model, channels, options, domain, frame_rotation(model), domain.end - origin};
}

bool closed_system(const RunContext& ctx) {
  return Dissipator(ctx.channels, dimension(ctx.model)).empty();
}

ComplexVector evolve_ket(const RunContext& ctx, const ComplexVector& psi0,
                         IntegrationDiagnostics& stats) {
  const auto traj = evolve_state(ctx.model, StateVector(psi0), ctx.domain.start, ctx.domain.end,
                                 ctx.options.integrator);
  stats.accepted_steps += traj.stats.accepted_steps;
  stats.rejected_steps += traj.stats.rejected_steps;
  ComplexVector psi = traj.final_state().amplitudes();
  if (!ctx.frame.is_identity()) {
    for (int k = 0; k < psi.size(); ++k) {
      psi(k) *= std::polar(1.0, ctx.frame.detunings(k) * ctx.frame_time);
    }
  }
  return psi;
}

ComplexMatrix evolve_rho(const RunContext& ctx, const ComplexMatrix& rho0,
                         IntegrationDiagnostics& stats) {
  const auto traj = evolve_density(ctx.model, ctx.channels, DensityOperator(rho0),
                                   ctx.domain.start, ctx.domain.end, ctx.options.integrator);
  stats.accepted_steps += traj.stats.accepted_steps;
  stats.rejected_steps += traj.stats.rejected_steps;
  if (ctx.frame.is_identity()) return traj.final_state().matrix();
  return rotate(traj.final_state().matrix(), ctx.frame, ctx.frame_time);
}

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) { return a * b.adjoint(); }

/// Output of one input state in per-state mode.
ComplexMatrix evolve_input(const RunContext& ctx, const QubitState& chi,
                           IntegrationDiagnostics& stats) {
  const int dim = dimension(ctx.model);
  const ComplexVector psi0 = embed_qubit(chi, dim).amplitudes();
  if (closed_system(ctx)) {
    const ComplexVector psi = evolve_ket(ctx, psi0, stats);
    return outer(psi, psi);
  }
  return evolve_rho(ctx, outer(psi0, psi0), stats);
}

/// Runs body(i) for i in [0, count) on `workers` threads. The first failure
/// by index is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, const Body& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  std::vector<std::exception_ptr> errors(count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
          try {
            body(i);
          } catch (...) {
            errors[i] = std::current_exception();
            failed = true;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Input states whose images span the qubit block: |0⟩, |1⟩, |+⟩, |+i⟩.
std::array<QubitState, 4> probe_states() {
  const double r = 1.0 / std::sqrt(2.0);
  return {QubitState(1.0, 0.0), QubitState(0.0, 1.0), QubitState(r, r),
          QubitState(r, Complex(0.0, r))};
}

ProcessMap build_process_map(const RunContext& ctx, IntegrationDiagnostics& stats) {
  const int dim = dimension(ctx.model);
  if (closed_system(ctx)) {
    std::array<ComplexVector, 2> u;
    std::array<IntegrationDiagnostics, 2> run_stats{};
    parallel_for(2, ctx.options.workers, [&](std::size_t j) {
      u[j] = evolve_ket(ctx, basis_ket(dim, static_cast<int>(j)), run_stats[j]);
    });
    for (const auto& s : run_stats) {
      stats.accepted_steps += s.accepted_steps;
      stats.rejected_steps += s.rejected_steps;
    }
    return ProcessMap({outer(u[0], u[0]), outer(u[0], u[1]), outer(u[1], u[0]), outer(u[1], u[1])});
  }
  const auto probes = probe_states();
  std::array<ComplexMatrix, 4> out;
  std::array<IntegrationDiagnostics, 4> run_stats{};
  parallel_for(4, ctx.options.workers, [&](std::size_t j) {
    try {
      const ComplexVector psi0 = embed_qubit(probes[j], dim).amplitudes();
      out[j] = evolve_rho(ctx, outer(psi0, psi0), run_stats[j]);
    } catch (const IntegrationFailure& e) {
      throw StateIntegrationFailure(e, probes[j]);
    }
  });
  for (const auto& s : run_stats) {
    stats.accepted_steps += s.accepted_steps;
    stats.rejected_steps += s.rejected_steps;
  }
  // |+⟩⟨+| and |+i⟩⟨+i| fix the off-diagonal images.
  const ComplexMatrix a = 2.0 * out[2] - out[0] - out[1];
  const ComplexMatrix b = 2.0 * out[3] - out[0] - out[1];
  return ProcessMap({out[0], 0.5 * (a + kI * b), 0.5 * (a - kI * b), out[1]});
}

/// χ0 displaced by (u + iv) along the orthogonal state, normalized.
QubitState chart_point(const QubitState& chi0, double u, double v) {
  const Complex c0 = chi0.c0() - Complex(u, -v) * std::conj(chi0.c1());
  const Complex c1 = chi0.c1() + Complex(u, -v) * std::conj(chi0.c0());
  const double norm = std::sqrt(std::norm(c0) + std::norm(c1));
  return QubitState(c0 / norm, c1 / norm);
}

/// Nelder–Mead minimization of f over the local chart around chi0.
double local_minimum(const std::function<double(const QubitState&)>& f, const QubitState& chi0) {
  using Point = std::array<double, 2>;
  std::array<Point, 3> simplex{Point{0.0, 0.0}, Point{0.05, 0.0}, Point{0.0, 0.05}};
  std::array<double, 3> value;
  const auto eval = [&](const Point& p) { return f(chart_point(chi0, p[0], p[1])); };
  for (int i = 0; i < 3; ++i) value[i] = eval(simplex[i]);
  for (int iter = 0; iter < 400; ++iter) {
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return value[a] < value[b]; });
    const int best = order[0], mid = order[1], worst = order[2];
    if (value[worst] - value[best] < 1e-15) break;
    const Point centroid{(simplex[best][0] + simplex[mid][0]) / 2,
                         (simplex[best][1] + simplex[mid][1]) / 2};
    const auto along = [&](double s) {
      return Point{centroid[0] + s * (simplex[worst][0] - centroid[0]),
                   centroid[1] + s * (simplex[worst][1] - centroid[1])};
    };
    const Point reflected = along(-1.0);
    const double fr = eval(reflected);
    if (fr < value[best]) {
      const Point expanded = along(-2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        value[worst] = fe;
      } else {
        simplex[worst] = reflected;
        value[worst] = fr;
      }
    } else if (fr < value[mid]) {
      simplex[worst] = reflected;
      value[worst] = fr;
    } else {
      const Point contracted = fr < value[worst] ? along(-0.5) : along(0.5);
      const double fc = eval(contracted);
      if (fc < std::min(fr, value[worst])) {
        simplex[worst] = contracted;
        value[worst] = fc;
      } else {
        for (int i : {mid, worst}) {
          simplex[i] = Point{(simplex[i][0] + simplex[best][0]) / 2,
                             (simplex[i][1] + simplex[best][1]) / 2};
          value[i] = eval(simplex[i]);
        }
      }
    }
  }
  return *std::min_element(value.begin(), value.end());
}

/// Indices of the k smallest keys, ties broken by index.
std::vector<std::size_t> smallest(const std::vector<double>& keys, std::size_t k) {
  std::vector<std::size_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  k = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<long>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      return keys[a] < keys[b] || (keys[a] == keys[b] && a < b);
                    });
  idx.resize(k);
  return idx;
}

}  // namespace

ProcessMap process_map(const SystemModel& model, const std::vector<Channel>& channels,
                       const FidelityOptions& options, IntegrationDiagnostics* stats) {
  options.integrator.validate();
  IntegrationDiagnostics local;
  ProcessMap map = build_process_map(make_context(model, channels, options), local);
  if (stats) {
    stats->accepted_steps += local.accepted_steps;
    stats->rejected_steps += local.rejected_steps;
  }
  return map;
}

FidelityStats fidelity_stats(const SystemModel& model, const std::vector<Channel>& channels,
                             const GateTarget& target, const std::vector<QubitState>& sample,
                             const FidelityOptions& options) {
  if (sample.empty()) throw InvalidArgument("fidelity statistics need a nonempty sample");
  options.integrator.validate();
  const RunContext ctx = make_context(model, channels, options);

  FidelityStats out;
  out.sample_count = sample.size();
  out.seed = options.seed;

  std::optional<ProcessMap> map;
  if (options.mode == PropagationMode::kProcessBasis || options.refine_extrema) {
    map = build_process_map(ctx, out.integration);
  }

  std::vector<double> values(sample.size());
  if (options.mode == PropagationMode::kProcessBasis) {
    for (std::size_t i = 0; i < sample.size(); ++i) values[i] = map->fidelity(target, sample[i]);
  } else {
    std::vector<IntegrationDiagnostics> run_stats(sample.size());
    parallel_for(sample.size(), options.workers, [&](std::size_t i) {
      try {
        values[i] = block_fidelity(evolve_input(ctx, sample[i], run_stats[i]), target, sample[i]);
      } catch (const IntegrationFailure& e) {
        throw StateIntegrationFailure(e, sample[i]);
      }
    });
    for (const auto& s : run_stats) {
      out.integration.accepted_steps += s.accepted_steps;
      out.integration.rejected_steps += s.rejected_steps;
    }
  }

  double sum = 0.0;
  for (double v : values) sum += v;
  out.avg = sum / static_cast<double>(values.size());
  out.max = *std::max_element(values.begin(), values.end());
  out.min = *std::min_element(values.begin(), values.end());

  if (options.refine_extrema) {
    const auto f = [&](const QubitState& chi) { return map->fidelity(target, chi); };
    const auto neg_f = [&](const QubitState& chi) { return -f(chi); };
    std::vector<double> negated(values.size());
    std::transform(values.begin(), values.end(), negated.begin(), [](double v) { return -v; });
    for (std::size_t i : smallest(negated, 3)) {
      out.max = std::max(out.max, -local_minimum(neg_f, sample[i]));
    }
    for (std::size_t i : smallest(values, 3)) {
      out.min = std::min(out.min, local_minimum(f, sample[i]));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Field-error perturbation theory on the (|0⟩, |1⟩, |e⟩) space.

namespace {

using Matrix3 = Eigen::Matrix<Complex, 3, 3>;
using Vector3c = Eigen::Matrix<Complex, 3, 1>;

/// ω0|e⟩⟨0| + ω1|e⟩⟨1| + h.c.
Matrix3 coupling_operator(Complex w0, Complex w1) {
  Matrix3 h = Matrix3::Zero();
  h(2, 0) = w0;
  h(2, 1) = w1;
  h(0, 2) = std::conj(w0);
  h(1, 2) = std::conj(w1);
  return h;
}

/// Qubit block of 1 − 2H0² − (1 − cos a)(H̃0² − 2H0²H̃0²).
QubitMatrix exact_overlap_operator(Complex omega0, Complex omega1, Complex d_omega0,
                                   Complex d_omega1, double d_area) {
  const Matrix3 h0 = coupling_operator(omega0, omega1);
  const Matrix3 ht = coupling_operator(omega0 + d_omega0, omega1 + d_omega1);
  const Matrix3 h0sq = h0 * h0;
  const Matrix3 htsq = ht * ht;
  const double a = kPi + d_area;
  const Matrix3 m =
      Matrix3::Identity() - 2.0 * h0sq - (1.0 - std::cos(a)) * (htsq - 2.0 * h0sq * htsq);
  return m.topLeftCorner<2, 2>();
}

void require_normalized(Complex w0, Complex w1, const char* what) {
  if (std::abs(std::norm(w0) + std::norm(w1) - 1.0) > 1e-12) {
    throw InvalidArgument(std::string(what) + " couplings must be normalized");
  }
}

}  // namespace

PerturbativeFidelity perturbative_fidelity(const QubitState& psi, Complex omega0, Complex omega1,
                                           Complex d_omega0, Complex d_omega1, double d_area) {
  require_normalized(omega0, omega1, "ideal");
  require_normalized(omega0 + d_omega0, omega1 + d_omega1, "perturbed");
  PerturbativeFidelity out;
  const QubitVector chi = psi.vector();
  out.exact =
      std::norm(chi.dot(exact_overlap_operator(omega0, omega1, d_omega0, d_omega1, d_area) * chi));

  const Matrix3 h0 = coupling_operator(omega0, omega1);
  const Matrix3 dh = coupling_operator(d_omega0, d_omega1);
  const Matrix3 h0sq = h0 * h0;
  const Matrix3 dhsq = dh * dh;
  Vector3c v = Vector3c::Zero();
  v.head<2>() = chi;
  const auto ev = [&v](const Matrix3& m) { return v.dot(m * v); };
  const Matrix3 inner = dh + h0 * dh * h0;
  const Complex c = ev(h0 * inner - inner * h0);
  out.second_order = 1.0 - d_area * d_area * ev(h0sq).real() - 4.0 * ev(dhsq).real() +
                     4.0 * ev(h0sq * dhsq + dhsq * h0sq).real() + 4.0 * (c * c).real();
  return out;
}

double perturbative_avg(Complex omega0, Complex omega1, Complex d_omega0, Complex d_omega1,
                        double d_area) {
  const Complex s = d_omega0 * std::conj(omega0) + d_omega1 * std::conj(omega1);
  return 1.0 - 0.5 * d_area * d_area - 2.0 * (std::norm(d_omega0) + std::norm(d_omega1)) +
         4.0 * std::norm(s);
}

double exact_average_fidelity(Complex omega0, Complex omega1, Complex d_omega0, Complex d_omega1,
                              double d_area) {
  require_normalized(omega0, omega1, "ideal");
  require_normalized(omega0 + d_omega0, omega1 + d_omega1, "perturbed");
  const QubitMatrix m = exact_overlap_operator(omega0, omega1, d_omega0, d_omega1, d_area);
  return ((m.adjoint() * m).trace().real() + std::norm(m.trace())) / 6.0;
}

}  // namespace holosim
