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

#include "holosim/pulses.hpp"

namespace holosim {
namespace {

double arcsech(double x) { return std::log((1.0 + std::sqrt(1.0 - x * x)) / x); }

TEST(SechEnvelope, PeakValueAtCentre) {
  const SechEnvelope env{2.5, 1.0};
  EXPECT_DOUBLE_EQ(envelope_value(env, 1.0), 2.5);
}

TEST(SechEnvelope, ZeroOutsideSupport) {
  const SechEnvelope env{2.0, 0.0};
  const Interval s = envelope_support(env);
  EXPECT_EQ(envelope_value(env, s.end + 1e-9), 0.0);
  EXPECT_EQ(envelope_value(env, s.start - 1e-9), 0.0);
  EXPECT_EQ(envelope_value(env, 100.0), 0.0);
}

TEST(SechEnvelope, TruncationEdgeValue) {
  const double beta = 3.0;
  const SechEnvelope env{beta, 0.5};
  const double edge = 0.5 + arcsech(1e-3) / beta;
  EXPECT_NEAR(envelope_value(env, edge * (1 - 1e-15)), beta / 1000.0, 1e-12);
  EXPECT_NEAR(env.half_width(), arcsech(1e-3) / beta, 1e-14);
}

TEST(SechEnvelope, PulseLength) {
  // 2·arcsech(10⁻³) = 2·ln(10³ + √(10⁶ − 1)).
  const double expected = 2.0 * std::log(1e3 + std::sqrt(1e6 - 1.0));
  EXPECT_NEAR(sech_pulse_length(1.0), expected, 1e-12);
  EXPECT_NEAR(sech_pulse_length(1.0), 15.2018, 1e-4);
  EXPECT_NEAR(sech_pulse_length(4.0), expected / 4.0, 1e-12);
}

TEST(SechEnvelope, InvalidParametersThrow) {
  EXPECT_THROW(envelope_value(SechEnvelope{0.0}, 0.0), InvalidArgument);
  EXPECT_THROW(envelope_value(SechEnvelope{1.0, 0.0, 1.5}, 0.0), InvalidArgument);
}

TEST(EnvelopeArea, TruncatedAreaMatchesGudermannian) {
  // ∫ β sech(βt) dt over |βt| ≤ x equals 2·gd(x) = 2·arcsin(tanh x).
  const double x = arcsech(1e-3);
  const double deficit = kPi - 2.0 * std::asin(std::tanh(x));
  const double area = envelope_area(SechEnvelope{1.7, -2.0});
  EXPECT_NEAR(area, kPi - deficit, 1e-10 * kPi);
  EXPECT_NEAR(deficit, 2e-3, 1e-5);
}

TEST(EnvelopeArea, UntruncatedLimitIsPi) {
  EXPECT_NEAR(envelope_area(SechEnvelope{1.0, 0.0, 1e-14}), kPi, 1e-10);
}

TEST(EnvelopeArea, IndependentOfBeta) {
  const double a1 = envelope_area(SechEnvelope{1.0});
  const double a2 = envelope_area(SechEnvelope{2.0});
  EXPECT_NEAR(a1, a2, 1e-12);
}

TEST(EnvelopeArea, WithinTenthOfPercentOfPi) {
  for (double ratio : {1e-3, 1e-4, 1e-6}) {
    EXPECT_LT(std::abs(envelope_area(SechEnvelope{1.0, 0.0, ratio}) - kPi), 1e-3 * kPi);
  }
}

TEST(EnvelopeArea, RectangleAndRescaling) {
  const RectEnvelope rect{2.0, 1.0, 2.5};
  EXPECT_NEAR(envelope_area(rect), 3.0, 1e-14);
  EXPECT_NEAR(envelope_area(with_area(rect, kPi)), kPi, 1e-14);
  EXPECT_NEAR(envelope_area(with_area(SechEnvelope{3.0}, kPi)), kPi, 1e-10);
  EXPECT_THROW(with_area(RectEnvelope{0.0, 0.0, 1.0}, kPi), InvalidArgument);
}

TEST(PulsePair, CouplingsMustBeNormalized) {
  EXPECT_NO_THROW((PulsePair{SechEnvelope{}, Complex(0.6), Complex(0.0, 0.8)}.validate()));
  EXPECT_THROW((PulsePair{SechEnvelope{}, Complex(1.0), Complex(1.0)}.validate()),
               InvalidArgument);
}

PulseSchedule two_pulses(double beta, double separation) {
  PulseSchedule s;
  const double r = 1.0 / std::sqrt(2.0);
  s.pairs.push_back(PulsePair{SechEnvelope{beta, 0.0}, Complex(-r), Complex(r)});
  s.pairs.push_back(PulsePair{SechEnvelope{beta, separation}, Complex(-r), Complex(r)});
  s.separation = separation;
  s.prep_time = envelope_support(s.pairs.front().envelope).start;
  s.readout_time = envelope_support(s.pairs.back().envelope).end;
  return s;
}

TEST(PulseSchedule, SinglePulseDurationEqualsPulseLength) {
  PulseSchedule s;
  s.pairs.push_back(PulsePair{SechEnvelope{2.0, 0.0}, Complex(0.0), Complex(1.0)});
  s.prep_time = -sech_pulse_length(2.0) / 2;
  s.readout_time = sech_pulse_length(2.0) / 2;
  EXPECT_NEAR(schedule_duration(s), 15.2018 / 2.0, 1e-4);
}

TEST(PulseSchedule, DecayGridDurationCoversSeparation) {
  // γ = 1 units, γ t_s = 8, β/γ over the decay sweep range.
  for (double beta : {2.0, 10.0, 100.0, 2000.0}) {
    const PulseSchedule s = two_pulses(beta, 8.0);
    EXPECT_GE(schedule_duration(s), 8.0 + sech_pulse_length(beta) - 1e-12);
  }
}

TEST(PulseSchedule, EmptyScheduleDuration) {
  PulseSchedule s;
  s.prep_time = 1.0;
  s.readout_time = 3.5;
  EXPECT_DOUBLE_EQ(schedule_duration(s), 2.5);
}

TEST(PulseSchedule, OverlapIsRejected) {
  // τ(β=1) ≈ 15.2 exceeds t_s = 10.
  EXPECT_THROW(schedule_duration(two_pulses(1.0, 10.0)), InvalidSchedule);
  EXPECT_NO_THROW(schedule_duration(two_pulses(1.0, 16.0)));
}

TEST(PulseSchedule, PrepAndReadoutMustBracketPulses) {
  PulseSchedule s = two_pulses(2.0, 10.0);
  s.prep_time += 0.1;
  EXPECT_THROW(s.validate(), InvalidSchedule);
  s = two_pulses(2.0, 10.0);
  s.readout_time -= 0.1;
  EXPECT_THROW(s.validate(), InvalidSchedule);
}

}  // namespace
}  // namespace holosim
