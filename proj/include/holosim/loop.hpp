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

#include <array>
#include <vector>

#include "holosim/core.hpp"

namespace holosim {

/// Coupling parametrizations of the tripod drive over (ϑ, φ).
enum class LoopFamily {
  /// (ω0, ω1, ωa) = (0, −sin(ϑ/2)e^{iφ}, cos(ϑ/2)); phase gates on |1⟩.
  kU1,
  /// (ω0, ω1, ωa) = (sinϑ cosφ, sinϑ sinφ, cosϑ); σ_y rotations.
  kU2,
};

struct LoopVertex {
  double theta = 0.0;
  double phi = 0.0;
};

/// Closed piecewise-linear path in (ϑ, φ), traversed at constant speed in
/// the (ϑ, φ) arc length.
struct AdiabaticLoop {
  LoopFamily family = LoopFamily::kU1;
  std::vector<LoopVertex> vertices;

  /// Σ |Δ(ϑ,φ)| over segments.
  double path_length() const;
  /// Vertex position after travelling the fraction s ∈ [0,1] of the length.
  LoopVertex point_at(double s) const;
  /// Arc-length fractions of every vertex (first 0, last 1).
  std::vector<double> vertex_fractions() const;
  bool is_closed(double tol = 1e-12) const;
};

/// Point at arc-length fraction s given precomputed vertex fractions.
LoopVertex interpolate_loop(const AdiabaticLoop& loop, const std::vector<double>& fractions,
                            double s);

/// (ω0, ω1, ωa) for a family at (ϑ, φ); always unit norm.
std::array<Complex, 3> loop_couplings(LoopFamily family, double theta, double phi);

}  // namespace holosim
