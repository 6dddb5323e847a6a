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

#include "holosim/core.hpp"

#include <cmath>
#include <random>

namespace holosim {

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

ComplexVector basis_ket(int dim, int index) {
  if (index < 0 || index >= dim) throw InvalidArgument("basis index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

ComplexMatrix basis_projector(int dim, int index) { return basis_operator(dim, index, index); }

ComplexMatrix basis_operator(int dim, int row, int col) {
  if (row < 0 || row >= dim || col < 0 || col >= dim) {
    throw InvalidArgument("basis index out of range");
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(row, col) = 1.0;
  return m;
}

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1 || amplitudes_.size() > kMaxDim) {
    throw InvalidArgument("state dimension out of range");
  }
  if (!amplitudes_.allFinite()) throw InvalidArgument("state has non-finite amplitudes");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-9) throw InvalidArgument("state is not normalized");
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw InvalidArgument("cannot normalize a zero vector");
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
    throw InvalidArgument("density operator must be square");
  }
  if (!matrix_.allFinite()) throw InvalidArgument("density operator has non-finite entries");
  if (!is_hermitian(matrix_, kHermitianTol)) throw InvalidArgument("density operator is not Hermitian");
  if (std::abs(trace() - 1.0) > kTraceTol) throw InvalidArgument("density operator trace is not 1");
  if (holosim::min_eigenvalue(matrix_) < -kPositivityTol) {
    throw InvalidArgument("density operator is not positive semidefinite");
  }
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  return DensityOperator(psi.projector());
}

QubitState::QubitState(Complex c0, Complex c1) : c0_(c0), c1_(c1) {
  const double norm2 = std::norm(c0) + std::norm(c1);
  if (std::abs(norm2 - 1.0) > 1e-12) throw InvalidArgument("qubit state is not normalized");
}

QubitState QubitState::from_bloch(double theta, double phi) {
  return QubitState(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
}

RealVector3 QubitState::bloch_vector() const {
  const Complex coherence = std::conj(c0_) * c1_;
  return {2 * coherence.real(), 2 * coherence.imag(), std::norm(c0_) - std::norm(c1_)};
}

double QubitState::theta() const { return 2 * std::atan2(std::abs(c1_), std::abs(c0_)); }

double QubitState::phi() const {
  const double phase = std::arg(c1_) - std::arg(c0_);
  return phase < 0 ? phase + 2 * kPi : phase;
}

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<QubitState> haar_qubit_sample(std::size_t count, std::uint64_t seed) {
  if (count == 0) throw InvalidArgument("haar_qubit_sample: count must be positive");
  std::mt19937_64 rng(seed);
  std::vector<QubitState> states;
  states.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double cos_theta = 1.0 - 2.0 * unit_uniform(rng);
    const double phi = 2.0 * kPi * unit_uniform(rng);
    // Half-angle forms avoid acos near the poles.
    const double c = std::sqrt(std::max(0.0, 0.5 * (1.0 + cos_theta)));
    const double s = std::sqrt(std::max(0.0, 0.5 * (1.0 - cos_theta)));
    const double norm = std::hypot(c, s);
    states.emplace_back(Complex(c / norm), std::polar(s / norm, phi));
  }
  return states;
}

StateVector embed_qubit(const QubitState& chi, int dim) {
  if (dim < 2 || dim > kMaxDim) throw InvalidArgument("embed_qubit: dimension must be in [2,5]");
  ComplexVector v = ComplexVector::Zero(dim);
  v(0) = chi.c0();
  v(1) = chi.c1();
  return StateVector::normalized(std::move(v));
}

QubitMatrix project_qubit_block(const ComplexMatrix& m) {
  if (m.rows() < 2 || m.cols() < 2) throw InvalidArgument("project_qubit_block: dimension below 2");
  return m.topLeftCorner<2, 2>();
}

ComplexMatrix embed_qubit_operator(const QubitMatrix& m, int dim) {
  if (dim < 2 || dim > kMaxDim) throw InvalidArgument("embed_qubit_operator: dimension out of range");
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  out.topLeftCorner<2, 2>() = m;
  return out;
}

}  // namespace holosim
