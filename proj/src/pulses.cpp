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

#include "holosim/pulses.hpp"

#include <cmath>
#include <limits>

namespace holosim {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double arcsech(double x) { return std::log((1.0 + std::sqrt(1.0 - x * x)) / x); }

double sech(double x) { return 1.0 / std::cosh(x); }

template <typename F>
double simpson_step(const F& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, 50);
}

}  // namespace

double SechEnvelope::half_width() const {
  if (!(beta > 0)) throw InvalidArgument("sech envelope needs beta > 0");
  if (truncation_ratio <= 0.0) return std::numeric_limits<double>::infinity();
  if (truncation_ratio >= 1.0) throw InvalidArgument("truncation ratio must be below 1");
  return arcsech(truncation_ratio) / beta;
}

double sech_pulse_length(double beta, double truncation_ratio) {
  return 2.0 * SechEnvelope{beta, 0.0, truncation_ratio, 1.0}.half_width();
}

double envelope_value(const Envelope& envelope, double t) {
  return std::visit(
      overloaded{
          [t](const SechEnvelope& e) {
            const double x = e.beta * (t - e.center);
            if (std::abs(t - e.center) > e.half_width()) return 0.0;
            return e.scale * e.beta * sech(x);
          },
          [t](const RectEnvelope& e) {
            return (t >= e.start && t <= e.end) ? e.amplitude : 0.0;
          }},
      envelope);
}

Interval envelope_support(const Envelope& envelope) {
  return std::visit([](const auto& e) { return e.support(); }, envelope);
}

double envelope_area(const Envelope& envelope) {
  return std::visit(
      overloaded{
          [](const SechEnvelope& e) {
            const double half = e.half_width();
            if (std::isinf(half)) return e.scale * kPi;
            // Integrate in the dimensionless variable x = β(t − center); the
            // integrand is even so one half suffices.
            const double x_max = e.beta * half;
            const auto f = [](double x) { return sech(x); };
            return 2.0 * e.scale * adaptive_simpson(f, 0.0, x_max, 1e-14);
          },
          [](const RectEnvelope& e) { return e.amplitude * (e.end - e.start); }},
      envelope);
}

Envelope with_area(const Envelope& envelope, double area) {
  const double current = envelope_area(envelope);
  if (!(std::abs(current) > 0)) throw InvalidArgument("cannot rescale an envelope of zero area");
  const double factor = area / current;
  return std::visit(
      overloaded{[factor](SechEnvelope e) -> Envelope {
                   e.scale *= factor;
                   return e;
                 },
                 [factor](RectEnvelope e) -> Envelope {
                   e.amplitude *= factor;
                   return e;
                 }},
      envelope);
}

void PulsePair::validate() const {
  if (std::abs(std::norm(omega0) + std::norm(omega1) - 1.0) > 1e-12) {
    throw InvalidArgument("pulse pair couplings must satisfy |w0|^2 + |w1|^2 = 1");
  }
}

void PulseSchedule::validate() const {
  if (readout_time < prep_time) throw InvalidSchedule("readout precedes preparation");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    pairs[i].validate();
    const Interval s = envelope_support(pairs[i].envelope);
    if (!std::isfinite(s.start) || !std::isfinite(s.end)) {
      throw InvalidSchedule("pulse support must be finite");
    }
    if (s.start < prep_time) throw InvalidSchedule("pulse starts before preparation");
    if (s.end > readout_time) throw InvalidSchedule("pulse ends after readout");
    if (i > 0) {
      const Interval prev = envelope_support(pairs[i - 1].envelope);
      if (prev.end > s.start) throw InvalidSchedule("pulse supports overlap (tau > t_s)");
    }
  }
}

double schedule_duration(const PulseSchedule& schedule) {
  schedule.validate();
  return schedule.readout_time - schedule.prep_time;
}

}  // namespace holosim
