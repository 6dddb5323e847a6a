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

#include "holosim/gates.hpp"

#include <algorithm>
#include <cmath>

namespace holosim {

BlochAxis::BlochAxis(const RealVector3& n) : n_(n) {
  if (!n.allFinite() || std::abs(n.norm() - 1.0) > 1e-12) {
    throw InvalidArgument("Bloch axis must be a unit vector");
  }
}

BlochAxis BlochAxis::from_angles(double theta, double phi) {
  RealVector3 n(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                std::cos(theta));
  return BlochAxis(n.normalized());
}

double BlochAxis::theta() const { return std::acos(std::clamp(n_(2), -1.0, 1.0)); }

double BlochAxis::phi() const {
  if (std::hypot(n_(0), n_(1)) == 0.0) return 0.0;
  return std::atan2(n_(1), n_(0));
}

GateTarget::GateTarget(const QubitMatrix& matrix) : matrix_(matrix) {
  const double defect = (matrix * matrix.adjoint() - QubitMatrix::Identity()).cwiseAbs().maxCoeff();
  if (!(defect <= 1e-12)) throw InvalidArgument("gate target is not unitary");
}

BlochAxis axis_from_couplings(Complex omega0, Complex omega1) {
  const double norm = std::norm(omega0) + std::norm(omega1);
  if (std::abs(norm - 1.0) > 1e-12) throw InvalidArgument("couplings must be normalized");
  // Dark state d = (−ω1, ω0); n is its Bloch vector.
  const Complex d0 = -omega1;
  const Complex d1 = omega0;
  const Complex cross = 2.0 * std::conj(d0) * d1;
  RealVector3 n(cross.real(), cross.imag(), std::norm(d0) - std::norm(d1));
  return BlochAxis(n.normalized());
}

std::pair<Complex, Complex> couplings_from_axis(const BlochAxis& n) {
  const double theta = n.theta();
  return {-std::sin(theta / 2) * std::polar(1.0, n.phi()), Complex(std::cos(theta / 2))};
}

GateTarget ideal_gate(const BlochAxis& n) { return GateTarget(pauli_dot(n.vector())); }

GateTarget compose(const BlochAxis& m, const BlochAxis& n) {
  const RealVector3 cross = m.vector().cross(n.vector());
  QubitMatrix u = m.vector().dot(n.vector()) * QubitMatrix::Identity() + kI * pauli_dot(cross);
  return GateTarget(u);
}

double phase_invariant_infidelity(const QubitMatrix& a, const QubitMatrix& b) {
  return 1.0 - std::norm((a.adjoint() * b).trace()) / 4.0;
}

double loop_solid_angle(const AdiabaticLoop& loop) {
  if (loop.vertices.size() < 2 || !loop.is_closed()) {
    throw InvalidArgument("solid angle needs a closed loop");
  }
  double gamma = 0.0;
  for (std::size_t i = 1; i < loop.vertices.size(); ++i) {
    const LoopVertex& a = loop.vertices[i - 1];
    const LoopVertex& b = loop.vertices[i];
    const double d_phi = b.phi - a.phi;
    const double d_theta = b.theta - a.theta;
    // ∫(1 − cos ϑ)dφ with ϑ linear in φ along the segment.
    if (d_theta == 0.0) {
      gamma += d_phi * (1.0 - std::cos(a.theta));
    } else {
      gamma += d_phi * (1.0 - (std::sin(b.theta) - std::sin(a.theta)) / d_theta);
    }
  }
  return gamma;
}

QubitMatrix loop_holonomy(const AdiabaticLoop& loop) {
  const double gamma = loop_solid_angle(loop);
  QubitMatrix u = QubitMatrix::Zero();
  switch (loop.family) {
    case LoopFamily::kU1:
      u(0, 0) = 1.0;
      u(1, 1) = std::polar(1.0, -gamma / 2);
      break;
    case LoopFamily::kU2:
      u(0, 0) = u(1, 1) = std::cos(gamma);
      u(0, 1) = -std::sin(gamma);
      u(1, 0) = std::sin(gamma);
      break;
  }
  return u;
}

GateTarget holonomy_gate(const std::vector<AdiabaticLoop>& loops) {
  QubitMatrix u = QubitMatrix::Identity();
  for (const auto& loop : loops) u = (loop_holonomy(loop) * u).eval();
  return GateTarget(u);
}

std::string_view preset_name(GatePreset preset) {
  return preset == GatePreset::kPhasePi2 ? "phase-pi-2" : "hadamard";
}

GatePreset parse_gate_preset(std::string_view name) {
  if (name == "phase-pi-2") return GatePreset::kPhasePi2;
  if (name == "hadamard") return GatePreset::kHadamard;
  throw InvalidArgument("unknown gate preset '" + std::string(name) + "'");
}

std::string_view scheme_name(Scheme scheme) {
  return scheme == Scheme::kNonAdiabatic ? "na" : "a";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "na") return Scheme::kNonAdiabatic;
  if (name == "a") return Scheme::kAdiabatic;
  throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
}

GateTarget gate_target(GatePreset preset) {
  QubitMatrix u;
  if (preset == GatePreset::kPhasePi2) {
    u << 1, 0, 0, kI;
  } else {
    u << 1, 1, 1, -1;
    u /= std::sqrt(2.0);
  }
  return GateTarget(u);
}

std::vector<BlochAxis> preset_axes(GatePreset preset) {
  const double r = 1.0 / std::sqrt(2.0);
  if (preset == GatePreset::kPhasePi2) {
    return {axis_from_couplings(-r, r), axis_from_couplings(-r, r * std::polar(1.0, -kPi / 4))};
  }
  const double norm = std::sqrt(2.0 * (2.0 - std::sqrt(2.0)));
  return {axis_from_couplings(1.0 / norm, (std::sqrt(2.0) - 1.0) / norm)};
}

namespace {

PulseSchedule schedule_from_couplings(const std::vector<std::pair<Complex, Complex>>& couplings,
                                      const NonAdiabaticTiming& timing) {
  if (couplings.empty()) throw InvalidArgument("need at least one pulse pair");
  if (!(timing.beta > 0)) throw InvalidArgument("sech bandwidth must be positive");
  if (couplings.size() > 1 && !(timing.separation > 0)) {
    throw InvalidArgument("pulse separation must be positive");
  }
  if (timing.prep_offset < 0 || timing.readout_offset < 0) {
    throw InvalidArgument("prep and readout offsets must be non-negative");
  }
  PulseSchedule schedule;
  schedule.separation = timing.separation;
  for (std::size_t i = 0; i < couplings.size(); ++i) {
    Envelope env = SechEnvelope{timing.beta, static_cast<double>(i) * timing.separation,
                                timing.truncation_ratio, 1.0};
    if (timing.renormalize_area) env = with_area(env, kPi);
    schedule.pairs.push_back(PulsePair{env, couplings[i].first, couplings[i].second});
  }
  schedule.prep_time = envelope_support(schedule.pairs.front().envelope).start - timing.prep_offset;
  schedule.readout_time =
      envelope_support(schedule.pairs.back().envelope).end + timing.readout_offset;
  schedule.validate();
  return schedule;
}

AdiabaticLoop make_loop(LoopFamily family, std::vector<LoopVertex> vertices) {
  return AdiabaticLoop{family, std::move(vertices)};
}

}  // namespace

PulseSchedule compile_nonadiabatic(const std::vector<BlochAxis>& axes,
                                   const NonAdiabaticTiming& timing) {
  std::vector<std::pair<Complex, Complex>> couplings;
  for (const auto& n : axes) couplings.push_back(couplings_from_axis(n));
  return schedule_from_couplings(couplings, timing);
}

PulseSchedule compile_nonadiabatic(GatePreset preset, const NonAdiabaticTiming& timing) {
  const double r = 1.0 / std::sqrt(2.0);
  if (preset == GatePreset::kPhasePi2) {
    return schedule_from_couplings({{-r, r}, {-r, r * std::polar(1.0, -kPi / 4)}}, timing);
  }
  const double norm = std::sqrt(2.0 * (2.0 - std::sqrt(2.0)));
  return schedule_from_couplings({{1.0 / norm, (std::sqrt(2.0) - 1.0) / norm}}, timing);
}

std::vector<AdiabaticLoop> preset_loops(GatePreset preset) {
  const double h = kPi / 2;
  if (preset == GatePreset::kPhasePi2) {
    return {make_loop(LoopFamily::kU1, {{0, 0}, {0, kPi}, {h, kPi}, {h, 0}, {0, 0}})};
  }
  return {make_loop(LoopFamily::kU2, {{0, 0}, {h, 0}, {h, -kPi / 4}, {0, -kPi / 4}, {0, 0}}),
          make_loop(LoopFamily::kU1, {{0, 0}, {h, 0}, {h, 2 * kPi}, {0, 2 * kPi}, {0, 0}})};
}

TripodModel compile_adiabatic(const std::vector<AdiabaticLoop>& loops, double coupling,
                              double run_time, LoopTiming timing,
                              const TripodDetunings& detunings) {
  if (!(coupling > 0) || !(run_time > 0)) {
    throw InvalidArgument("adiabatic gate needs positive coupling and run time");
  }
  for (const auto& loop : loops) {
    if (!loop.is_closed()) throw InvalidArgument("adiabatic loops must be closed");
  }
  return TripodModel(coupling, run_time, loops, timing, detunings.delta0, detunings.delta1,
                     detunings.delta_aux);
}

TripodModel compile_adiabatic(GatePreset preset, double coupling, double run_time,
                              LoopTiming timing, const TripodDetunings& detunings) {
  return compile_adiabatic(preset_loops(preset), coupling, run_time, timing, detunings);
}

}  // namespace holosim
