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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "holosim/gates.hpp"
#include "holosim/propagate.hpp"

namespace holosim {
namespace {

constexpr double kTol = 1e-12;

double dist(const QubitMatrix& a, const QubitMatrix& b) {
  return phase_invariant_infidelity(a, b);
}

BlochAxis random_axis(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return BlochAxis::from_angles(std::acos(1.0 - 2.0 * u(rng)), 2.0 * kPi * u(rng));
}

QubitMatrix simulated_gate(const SystemModel& model) {
  const Interval dom = time_domain(model);
  QubitMatrix u;
  for (int j = 0; j < 2; ++j) {
    const auto traj = evolve_state(model, StateVector(basis_ket(dimension(model), j)), dom.start,
                                   dom.end, IntegratorConfig{1e-11, 1e-13});
    u(0, j) = traj.final_state()[0];
    u(1, j) = traj.final_state()[1];
  }
  return u;
}

TEST(BlochAxis, NormalizationIsEnforced) {
  EXPECT_THROW(BlochAxis(RealVector3(1.0, 1.0, 0.0)), InvalidArgument);
  const BlochAxis n = BlochAxis::from_angles(0.4, -2.0);
  EXPECT_NEAR(n.vector().norm(), 1.0, kTol);
  EXPECT_NEAR(n.theta(), 0.4, kTol);
  EXPECT_NEAR(n.phi(), -2.0, kTol);
}

TEST(GateTarget, RejectsNonUnitary) {
  QubitMatrix m = QubitMatrix::Identity();
  m(0, 1) = 0.5;
  EXPECT_THROW(GateTarget{m}, InvalidArgument);
}

TEST(AxisFromCouplings, SigmaZ) {
  const BlochAxis n = axis_from_couplings(0.0, 1.0);
  EXPECT_LT((n.vector() - RealVector3(0, 0, 1)).norm(), kTol);
  EXPECT_LT(dist(ideal_gate(n).matrix(), pauli_z<double>()), kTol);
}

TEST(AxisFromCouplings, SigmaXFromFirstPhasePair) {
  const double r = 1.0 / std::sqrt(2.0);
  const BlochAxis n = axis_from_couplings(-r, r);
  EXPECT_LT((n.vector() - RealVector3(1, 0, 0)).norm(), kTol);
}

TEST(AxisFromCouplings, HadamardPair) {
  const double k = std::sqrt(2.0 * (2.0 - std::sqrt(2.0)));
  const Complex w0(1.0 / k), w1((std::sqrt(2.0) - 1.0) / k);
  const RealVector3 n = axis_from_couplings(w0, w1).vector();
  const RealVector3 expected = RealVector3(1, 0, 1) / std::sqrt(2.0);
  EXPECT_LT(std::min((n - expected).norm(), (n + expected).norm()), kTol);

  // |d⟩⟨d| − |b⟩⟨b| on the qubit block is ∓H.
  const QubitVector d(-w1, w0), b(std::conj(w0), std::conj(w1));
  const QubitMatrix u = d * d.adjoint() - b * b.adjoint();
  QubitMatrix h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  EXPECT_LT(std::min((u - h).norm(), (u + h).norm()), kTol);
}

TEST(AxisFromCouplings, VanishingOmega1IsThetaPi) {
  const BlochAxis n = axis_from_couplings(Complex(0.0, 1.0), 0.0);
  EXPECT_NEAR(n.vector().z(), -1.0, kTol);
}

TEST(AxisFromCouplings, RoundTripsThroughCouplings) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const BlochAxis n = random_axis(rng);
    const auto [w0, w1] = couplings_from_axis(n);
    EXPECT_NEAR(std::norm(w0) + std::norm(w1), 1.0, kTol);
    EXPECT_LT((axis_from_couplings(w0, w1).vector() - n.vector()).norm(), 1e-10);
  }
}

TEST(Compose, SameAxisIsIdentity) {
  std::mt19937_64 rng(3);
  const BlochAxis n = random_axis(rng);
  EXPECT_LT((compose(n, n).matrix() - QubitMatrix::Identity()).norm(), kTol);
}

TEST(Compose, PhaseGateFromTwoAxes) {
  const BlochAxis n(RealVector3(1, 0, 0));
  const BlochAxis m(RealVector3(std::cos(kPi / 4), std::sin(kPi / 4), 0));
  QubitMatrix s = QubitMatrix::Identity();
  s(1, 1) = Complex(0, 1);
  EXPECT_LT(dist(compose(m, n).matrix(), s), kTol);
  EXPECT_LT(dist(compose(m, n).matrix(), gate_target(GatePreset::kPhasePi2).matrix()), kTol);
}

TEST(Compose, MatchesMatrixProduct) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const BlochAxis n = random_axis(rng), m = random_axis(rng);
    const QubitMatrix product = ideal_gate(m).matrix() * ideal_gate(n).matrix();
    EXPECT_LT((compose(m, n).matrix() - product).norm(), 1e-13);
  }
}

TEST(IdealGate, HadamardFromSingleAxis) {
  const BlochAxis n(RealVector3(1, 0, 1) / std::sqrt(2.0));
  EXPECT_LT(dist(ideal_gate(n).matrix(), gate_target(GatePreset::kHadamard).matrix()), kTol);
}

TEST(PhaseInvariantInfidelity, IgnoresGlobalPhase) {
  const QubitMatrix h = gate_target(GatePreset::kHadamard).matrix();
  EXPECT_NEAR(dist(h, std::exp(Complex(0, 1.234)) * h), 0.0, 1e-15);
  EXPECT_NEAR(dist(h, QubitMatrix::Identity()), 1.0, 1e-15);
}

TEST(CompileNonAdiabatic, PhasePresetPairs) {
  const PulseSchedule s =
      compile_nonadiabatic(GatePreset::kPhasePi2, {.beta = 2.0, .separation = 10.0});
  ASSERT_EQ(s.pairs.size(), 2u);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LT(std::abs(s.pairs[0].omega0 + r), kTol);
  EXPECT_LT(std::abs(s.pairs[0].omega1 - r), kTol);
  EXPECT_LT(std::abs(s.pairs[1].omega0 + r), kTol);
  EXPECT_LT(std::abs(s.pairs[1].omega1 - r * std::exp(Complex(0, -kPi / 4))), kTol);
  const auto& a = std::get<SechEnvelope>(s.pairs[0].envelope);
  const auto& b = std::get<SechEnvelope>(s.pairs[1].envelope);
  EXPECT_DOUBLE_EQ(b.center - a.center, 10.0);
  EXPECT_DOUBLE_EQ(a.scale, 1.0);
  EXPECT_NEAR(s.prep_time, envelope_support(a).start, kTol);
  EXPECT_NEAR(s.readout_time, envelope_support(b).end, kTol);
}

TEST(CompileNonAdiabatic, HadamardAndCustomAxis) {
  const PulseSchedule h = compile_nonadiabatic(GatePreset::kHadamard, {.beta = 1.0});
  ASSERT_EQ(h.pairs.size(), 1u);
  const double k = std::sqrt(2.0 * (2.0 - std::sqrt(2.0)));
  EXPECT_LT(std::abs(h.pairs[0].omega0 - 1.0 / k), kTol);
  EXPECT_LT(std::abs(h.pairs[0].omega1 - (std::sqrt(2.0) - 1.0) / k), kTol);

  const PulseSchedule z =
      compile_nonadiabatic(std::vector{BlochAxis(RealVector3(0, 0, 1))}, {.beta = 1.0});
  EXPECT_LT(std::abs(z.pairs[0].omega0), kTol);
  EXPECT_LT(std::abs(z.pairs[0].omega1 - 1.0), kTol);
}

TEST(CompileNonAdiabatic, OverlapAndRenormalization) {
  EXPECT_THROW(compile_nonadiabatic(GatePreset::kPhasePi2, {.beta = 1.0, .separation = 10.0}),
               InvalidSchedule);
  const PulseSchedule s = compile_nonadiabatic(
      GatePreset::kPhasePi2, {.beta = 2.0, .separation = 10.0, .renormalize_area = true});
  for (const auto& p : s.pairs) EXPECT_NEAR(envelope_area(p.envelope), kPi, 1e-10);
}

TEST(SimulatedGates, SinglePairRealizesAxisGate) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const BlochAxis n = random_axis(rng);
    const SystemModel m = LambdaModel(
        compile_nonadiabatic(std::vector{n}, {.beta = 3.0, .renormalize_area = true}));
    EXPECT_LT(dist(simulated_gate(m), ideal_gate(n).matrix()), 1e-8);
  }
}

TEST(SimulatedGates, TwoPairsCompose) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 20; ++i) {
    const BlochAxis n = random_axis(rng), m = random_axis(rng);
    const SystemModel model = LambdaModel(compile_nonadiabatic(
        std::vector{n, m}, {.beta = 3.0, .separation = 6.0, .renormalize_area = true}));
    EXPECT_LT(dist(simulated_gate(model), compose(m, n).matrix()), 1e-8);
  }
}

AdiabaticLoop strip(LoopFamily family, double theta, double phi) {
  return AdiabaticLoop{family, {{0, 0}, {theta, 0}, {theta, phi}, {0, phi}, {0, 0}}};
}

TEST(SolidAngle, StripLoops) {
  EXPECT_NEAR(loop_solid_angle(strip(LoopFamily::kU1, kPi / 2, kPi)), kPi, 1e-14);
  EXPECT_NEAR(loop_solid_angle(strip(LoopFamily::kU1, kPi / 2, 2 * kPi)), 2 * kPi, 1e-14);
  // Δφ(1 − cos ϑ) for a general latitude.
  EXPECT_NEAR(loop_solid_angle(strip(LoopFamily::kU2, 1.1, 0.7)), 0.7 * (1 - std::cos(1.1)),
              1e-14);
}

TEST(SolidAngle, ReversedOrientationNegates) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 10; ++i) {
    AdiabaticLoop loop{LoopFamily::kU1, {{0.2, 0.1}}};
    for (int k = 0; k < 4; ++k) loop.vertices.push_back({std::abs(u(rng)), u(rng)});
    loop.vertices.push_back(loop.vertices.front());
    AdiabaticLoop reversed = loop;
    std::reverse(reversed.vertices.begin(), reversed.vertices.end());
    EXPECT_NEAR(loop_solid_angle(reversed), -loop_solid_angle(loop), 1e-13);
  }
}

TEST(SolidAngle, OpenLoopThrows) {
  const AdiabaticLoop open{LoopFamily::kU1, {{0, 0}, {1, 0}, {1, 1}}};
  EXPECT_THROW(loop_solid_angle(open), InvalidArgument);
}

TEST(SolidAngle, DegenerateLoopGivesIdentity) {
  const AdiabaticLoop flat{LoopFamily::kU1, {{0, 0}, {1, 0}, {0, 0}}};
  EXPECT_NEAR(loop_solid_angle(flat), 0.0, 1e-15);
  EXPECT_LT(dist(holonomy_gate({flat}).matrix(), QubitMatrix::Identity()), kTol);
}

TEST(Holonomy, PresetLoopsReachTargets) {
  const auto phase = preset_loops(GatePreset::kPhasePi2);
  ASSERT_EQ(phase.size(), 1u);
  EXPECT_NEAR(std::abs(loop_solid_angle(phase[0])), kPi, 1e-14);
  EXPECT_LT(dist(holonomy_gate(phase).matrix(), gate_target(GatePreset::kPhasePi2).matrix()),
            kTol);

  const auto had = preset_loops(GatePreset::kHadamard);
  ASSERT_EQ(had.size(), 2u);
  EXPECT_EQ(had[0].family, LoopFamily::kU2);
  EXPECT_EQ(had[1].family, LoopFamily::kU1);
  EXPECT_NEAR(std::abs(loop_solid_angle(had[1])), 2 * kPi, 1e-14);
  EXPECT_LT(dist(holonomy_gate(had).matrix(), gate_target(GatePreset::kHadamard).matrix()), kTol);
}

TEST(Holonomy, ForwardPhaseLoopGivesConjugateGate) {
  // (0,0)→(π/2,0)→(π/2,π)→(0,π) encloses +π and yields diag(1, −i).
  const AdiabaticLoop forward = strip(LoopFamily::kU1, kPi / 2, kPi);
  QubitMatrix s_dag = QubitMatrix::Identity();
  s_dag(1, 1) = Complex(0, -1);
  EXPECT_LT(dist(loop_holonomy(forward), s_dag), kTol);
}

TEST(Holonomy, LargeRunTimeConvergesToHolonomy) {
  for (GatePreset preset : {GatePreset::kPhasePi2, GatePreset::kHadamard}) {
    const double coarse =
        dist(simulated_gate(compile_adiabatic(preset, 1.0, 300.0)), gate_target(preset).matrix());
    const double fine =
        dist(simulated_gate(compile_adiabatic(preset, 1.0, 3000.0)), gate_target(preset).matrix());
    EXPECT_LT(fine, 1e-3) << preset_name(preset);
    EXPECT_LT(fine, coarse) << preset_name(preset);
  }
}

TEST(CompileAdiabatic, RunTimeSplitByPathLength) {
  const TripodModel total = compile_adiabatic(GatePreset::kHadamard, 1.0, 10.0);
  EXPECT_NEAR(total.total_time(), 10.0, 1e-12);
  const TripodModel per_loop =
      compile_adiabatic(GatePreset::kHadamard, 1.0, 10.0, LoopTiming::kPerLoop);
  EXPECT_NEAR(per_loop.total_time(), 20.0, 1e-12);
  const auto loops = preset_loops(GatePreset::kHadamard);
  const double first = 10.0 * loops[0].path_length() /
                       (loops[0].path_length() + loops[1].path_length());
  const auto bp = total.breakpoints();
  EXPECT_NE(std::find_if(bp.begin(), bp.end(), [&](double t) { return std::abs(t - first) < 1e-12; }),
            bp.end());
  EXPECT_THROW(compile_adiabatic(GatePreset::kHadamard, 0.0, 10.0), InvalidArgument);
}

TEST(Presets, NamesRoundTrip) {
  for (GatePreset p : {GatePreset::kPhasePi2, GatePreset::kHadamard}) {
    EXPECT_EQ(parse_gate_preset(preset_name(p)), p);
  }
  EXPECT_EQ(preset_name(GatePreset::kPhasePi2), "phase-pi-2");
  EXPECT_EQ(scheme_name(Scheme::kNonAdiabatic), "na");
  EXPECT_EQ(parse_scheme("a"), Scheme::kAdiabatic);
  EXPECT_THROW(parse_gate_preset("cnot"), InvalidArgument);
}

}  // namespace
}  // namespace holosim
