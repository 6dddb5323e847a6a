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

#include "holosim/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace holosim {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

// ---------------------------------------------------------------------------
// Loops

double AdiabaticLoop::path_length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    total += std::hypot(vertices[i].theta - vertices[i - 1].theta,
                        vertices[i].phi - vertices[i - 1].phi);
  }
  return total;
}

std::vector<double> AdiabaticLoop::vertex_fractions() const {
  std::vector<double> fractions(vertices.size(), 0.0);
  const double total = path_length();
  double run = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    run += std::hypot(vertices[i].theta - vertices[i - 1].theta,
                      vertices[i].phi - vertices[i - 1].phi);
    fractions[i] = total > 0 ? run / total : static_cast<double>(i) / (vertices.size() - 1);
  }
  if (!fractions.empty()) fractions.back() = 1.0;
  return fractions;
}

LoopVertex interpolate_loop(const AdiabaticLoop& loop, const std::vector<double>& fractions,
                            double s) {
  const auto& vertices = loop.vertices;
  if (vertices.empty()) throw InvalidArgument("loop has no vertices");
  if (vertices.size() == 1 || s <= 0.0) return vertices.front();
  if (s >= 1.0) return vertices.back();
  const auto it = std::upper_bound(fractions.begin(), fractions.end(), s);
  const std::size_t hi = std::min<std::size_t>(it - fractions.begin(), vertices.size() - 1);
  const std::size_t lo = hi - 1;
  const double span = fractions[hi] - fractions[lo];
  const double u = span > 0 ? (s - fractions[lo]) / span : 0.0;
  return {vertices[lo].theta + u * (vertices[hi].theta - vertices[lo].theta),
          vertices[lo].phi + u * (vertices[hi].phi - vertices[lo].phi)};
}

LoopVertex AdiabaticLoop::point_at(double s) const {
  return interpolate_loop(*this, vertex_fractions(), s);
}

bool AdiabaticLoop::is_closed(double tol) const {
  if (vertices.size() < 2) return !vertices.empty();
  return std::abs(vertices.front().theta - vertices.back().theta) <= tol &&
         std::abs(vertices.front().phi - vertices.back().phi) <= tol;
}

std::array<Complex, 3> loop_couplings(LoopFamily family, double theta, double phi) {
  switch (family) {
    case LoopFamily::kU1:
      return {Complex(0.0), -std::sin(theta / 2) * std::polar(1.0, phi),
              Complex(std::cos(theta / 2))};
    case LoopFamily::kU2:
      return {Complex(std::sin(theta) * std::cos(phi)), Complex(std::sin(theta) * std::sin(phi)),
              Complex(std::cos(theta))};
  }
  throw InvalidArgument("unknown loop family");
}

// ---------------------------------------------------------------------------
// Models

PulsePair perturbed_pair(const PulsePair& pair, const FieldError& error) {
  const Complex w0 = pair.omega0 + error.d_omega0;
  const Complex w1 = pair.omega1 + error.d_omega1;
  const double norm = std::sqrt(std::norm(w0) + std::norm(w1));
  if (!(norm > 0)) throw InvalidArgument("field error cancels the couplings");
  return PulsePair{with_area(pair.envelope, error.area), w0 / norm, w1 / norm};
}

LambdaModel::LambdaModel(PulseSchedule schedule, double delta0, double delta1,
                         std::optional<FieldError> field_error)
    : schedule_(std::move(schedule)),
      delta0_(delta0),
      delta1_(delta1),
      field_error_(field_error) {
  if (field_error_) {
    for (auto& pair : schedule_.pairs) pair = perturbed_pair(pair, *field_error_);
  }
  schedule_.validate();
}

TripodModel::TripodModel(double coupling, double run_time, std::vector<AdiabaticLoop> loops,
                         LoopTiming timing, double delta0, double delta1, double delta_aux)
    : coupling_(coupling),
      run_time_(run_time),
      loops_(std::move(loops)),
      timing_(timing),
      delta0_(delta0),
      delta1_(delta1),
      delta_aux_(delta_aux) {
  if (!(coupling_ >= 0) || !(run_time_ > 0)) {
    throw InvalidArgument("tripod model needs coupling >= 0 and run time > 0");
  }
  if (loops_.empty()) throw InvalidArgument("tripod model needs at least one loop");
  double total_length = 0.0;
  for (const auto& loop : loops_) {
    if (loop.vertices.empty()) throw InvalidArgument("loop has no vertices");
    total_length += loop.path_length();
  }
  double t = 0.0;
  for (const auto& loop : loops_) {
    double duration = run_time_;
    if (timing_ == LoopTiming::kTotalByLength) {
      duration = total_length > 0 ? run_time_ * loop.path_length() / total_length
                                  : run_time_ / static_cast<double>(loops_.size());
    }
    fractions_.push_back(loop.vertex_fractions());
    loop_start_.push_back(t);
    t += duration;
    loop_end_.push_back(t);
  }
}

std::array<Complex, 3> TripodModel::couplings_at(double t) const {
  std::size_t i = 0;
  while (i + 1 < loops_.size() && t > loop_end_[i]) ++i;
  const double duration = loop_end_[i] - loop_start_[i];
  const double s = duration > 0 ? (t - loop_start_[i]) / duration : 1.0;
  const LoopVertex v = interpolate_loop(loops_[i], fractions_[i], s);
  return loop_couplings(loops_[i].family, v.theta, v.phi);
}

std::vector<double> TripodModel::breakpoints() const {
  std::vector<double> times;
  for (std::size_t i = 0; i < loops_.size(); ++i) {
    const double duration = loop_end_[i] - loop_start_[i];
    for (double f : fractions_[i]) times.push_back(loop_start_[i] + f * duration);
  }
  times.push_back(0.0);
  times.push_back(total_time());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

DecayChannel decay_channel(const SystemModel& model, double gamma) {
  if (std::holds_alternative<TripodModel>(model)) {
    return {gamma, tripod_basis::kExcited, tripod_basis::kSink};
  }
  return {gamma, lambda_basis::kExcited, lambda_basis::kSink};
}

DephasingChannel dephasing_channel(const SystemModel& model, double epsilon) {
  if (std::holds_alternative<TripodModel>(model)) return {epsilon, tripod_basis::kExcited};
  return {epsilon, lambda_basis::kExcited};
}

std::vector<ComplexMatrix> jump_operators(const Channel& channel, int dim) {
  return std::visit(
      overloaded{
          [dim](const DecayChannel& c) {
            if (c.gamma < 0) throw InvalidArgument("decay rate must be non-negative");
            std::vector<ComplexMatrix> ops;
            if (c.gamma > 0) ops.push_back(std::sqrt(c.gamma) * basis_operator(dim, c.sink, c.source));
            return ops;
          },
          [dim](const DephasingChannel& c) {
            if (c.epsilon < 0) throw InvalidArgument("dephasing rate must be non-negative");
            std::vector<ComplexMatrix> ops;
            if (c.epsilon > 0) {
              for (int k : {0, 1}) {
                ops.push_back(std::sqrt(c.epsilon) *
                              (basis_projector(dim, c.excited) - basis_projector(dim, k)));
              }
            }
            return ops;
          }},
      channel);
}

int dimension(const SystemModel& model) {
  return std::holds_alternative<TripodModel>(model) ? tripod_basis::kDim : lambda_basis::kDim;
}

Interval time_domain(const SystemModel& model) {
  return std::visit(
      overloaded{[](const LambdaModel& m) {
                   return Interval{m.schedule().prep_time, m.schedule().readout_time};
                 },
                 [](const TripodModel& m) { return Interval{0.0, m.total_time()}; }},
      model);
}

std::vector<double> breakpoints(const SystemModel& model) {
  return std::visit(
      overloaded{[](const LambdaModel& m) {
                   const auto& s = m.schedule();
                   std::vector<double> times{s.prep_time, s.readout_time};
                   for (const auto& pair : s.pairs) {
                     const Interval support = envelope_support(pair.envelope);
                     times.push_back(support.start);
                     times.push_back(support.end);
                   }
                   std::sort(times.begin(), times.end());
                   times.erase(std::unique(times.begin(), times.end()), times.end());
                   return times;
                 },
                 [](const TripodModel& m) { return m.breakpoints(); }},
      model);
}

namespace {

bool silent(const Envelope& envelope) {
  return std::visit(overloaded{[](const SechEnvelope& e) { return e.scale == 0.0; },
                               [](const RectEnvelope& e) { return e.amplitude == 0.0; }},
                    envelope);
}

}  // namespace

bool is_driven(const SystemModel& model, double a, double b) {
  return std::visit(overloaded{[a, b](const LambdaModel& m) {
                                 for (const auto& pair : m.schedule().pairs) {
                                   if (silent(pair.envelope)) continue;
                                   const Interval s = envelope_support(pair.envelope);
                                   if (s.start < b && s.end > a) return true;
                                 }
                                 return false;
                               },
                               [](const TripodModel& m) { return m.coupling() != 0.0; }},
                    model);
}

Eigen::VectorXd detuning_diagonal(const SystemModel& model) {
  return std::visit(overloaded{[](const LambdaModel& m) {
                                 Eigen::VectorXd d = Eigen::VectorXd::Zero(lambda_basis::kDim);
                                 d(lambda_basis::kZero) = m.delta0();
                                 d(lambda_basis::kOne) = m.delta1();
                                 return d;
                               },
                               [](const TripodModel& m) {
                                 Eigen::VectorXd d = Eigen::VectorXd::Zero(tripod_basis::kDim);
                                 d(tripod_basis::kZero) = m.delta0();
                                 d(tripod_basis::kOne) = m.delta1();
                                 d(tripod_basis::kAux) = m.delta_aux();
                                 return d;
                               }},
                    model);
}

ComplexMatrix hamiltonian_unchecked(const SystemModel& model, double t) {
  return std::visit(
      overloaded{
          [t](const LambdaModel& m) {
            using namespace lambda_basis;
            ComplexMatrix h = ComplexMatrix::Zero(kDim, kDim);
            for (const auto& pair : m.schedule().pairs) {
              const double omega = envelope_value(pair.envelope, t);
              if (omega == 0.0) continue;
              h(kExcited, kZero) += omega * pair.omega0;
              h(kExcited, kOne) += omega * pair.omega1;
            }
            h(kZero, kExcited) = std::conj(h(kExcited, kZero));
            h(kOne, kExcited) = std::conj(h(kExcited, kOne));
            h(kZero, kZero) = m.delta0();
            h(kOne, kOne) = m.delta1();
            return h;
          },
          [t](const TripodModel& m) {
            using namespace tripod_basis;
            ComplexMatrix h = ComplexMatrix::Zero(kDim, kDim);
            const auto w = m.couplings_at(t);
            const int ground[3] = {kZero, kOne, kAux};
            for (int j = 0; j < 3; ++j) {
              h(kExcited, ground[j]) = m.coupling() * w[j];
              h(ground[j], kExcited) = std::conj(h(kExcited, ground[j]));
            }
            h(kZero, kZero) = m.delta0();
            h(kOne, kOne) = m.delta1();
            h(kAux, kAux) = m.delta_aux();
            return h;
          }},
      model);
}

ComplexMatrix hamiltonian_at(const SystemModel& model, double t) {
  const Interval domain = time_domain(model);
  const double slack = 1e-12 * std::max(1.0, std::abs(domain.end) + std::abs(domain.start));
  if (!(t >= domain.start - slack && t <= domain.end + slack)) {
    throw InvalidArgument("hamiltonian_at: time outside the model domain");
  }
  return hamiltonian_unchecked(model, t);
}

Dissipator::Dissipator(const std::vector<Channel>& channels, int dim) {
  for (const auto& channel : channels) {
    for (auto& op : jump_operators(channel, dim)) {
      ops_dagger_.push_back(op.adjoint());
      decay_terms_.push_back(ops_dagger_.back() * op);
      ops_.push_back(std::move(op));
    }
  }
}

void Dissipator::accumulate(const ComplexMatrix& rho, ComplexMatrix& out) const {
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    out.noalias() += 2.0 * ops_[k] * rho * ops_dagger_[k];
    out.noalias() -= decay_terms_[k] * rho;
    out.noalias() -= rho * decay_terms_[k];
  }
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& hamiltonian, const std::vector<Channel>& channels,
                           const ComplexMatrix& rho) {
  require_conforming(hamiltonian, rho);
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  if (!is_hermitian(hamiltonian, 1e-12 * scale)) {
    throw InvalidArgument("lindblad_rhs: Hamiltonian is not Hermitian");
  }
  ComplexMatrix out = -kI * commutator(hamiltonian, rho);
  Dissipator(channels, static_cast<int>(rho.rows())).accumulate(rho, out);
  return out;
}

StateVector dark_state(const PulsePair& pair) {
  pair.validate();
  ComplexVector v = ComplexVector::Zero(lambda_basis::kDim);
  v(lambda_basis::kZero) = -pair.omega1;
  v(lambda_basis::kOne) = pair.omega0;
  return StateVector::normalized(std::move(v));
}

StateVector bright_state(const PulsePair& pair) {
  pair.validate();
  ComplexVector v = ComplexVector::Zero(lambda_basis::kDim);
  v(lambda_basis::kZero) = std::conj(pair.omega0);
  v(lambda_basis::kOne) = std::conj(pair.omega1);
  return StateVector::normalized(std::move(v));
}

}  // namespace holosim
