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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "holosim/errors.hpp"

namespace holosim {

/// Largest Hilbert-space dimension handled by the engine (tripod + sink).
inline constexpr int kMaxDim = 5;

template <typename Scalar>
using MatrixX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic,
                              Eigen::RowMajor, kMaxDim, kMaxDim>;
template <typename Scalar>
using VectorX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
template <typename Scalar>
using Matrix2 = Eigen::Matrix<std::complex<Scalar>, 2, 2, Eigen::RowMajor>;
template <typename Scalar>
using Vector2 = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = MatrixX<double>;
using ComplexVector = VectorX<double>;
using QubitMatrix = Matrix2<double>;
using QubitVector = Vector2<double>;
using RealVector3 = Eigen::Vector3d;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Pauli algebra

template <typename Scalar = double>
Matrix2<Scalar> pauli_x() {
  Matrix2<Scalar> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Scalar = double>
Matrix2<Scalar> pauli_y() {
  using C = std::complex<Scalar>;
  Matrix2<Scalar> m;
  m << C(0), C(0, -1), C(0, 1), C(0);
  return m;
}

template <typename Scalar = double>
Matrix2<Scalar> pauli_z() {
  Matrix2<Scalar> m;
  m << 1, 0, 0, -1;
  return m;
}

/// n·σ for a real 3-vector (not required to be normalized).
template <typename Derived>
Matrix2<typename Derived::Scalar> pauli_dot(const Eigen::MatrixBase<Derived>& n) {
  using S = typename Derived::Scalar;
  return pauli_x<S>() * n(0) + pauli_y<S>() * n(1) + pauli_z<S>() * n(2);
}

// ---------------------------------------------------------------------------
// Dimension-checked matrix operations. Eigen asserts on mismatched operands;
// these throw InvalidArgument instead so callers can recover.

template <typename A, typename B>
void require_conforming(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("matrix dimensions do not conform");
  }
}

template <typename A, typename B>
auto add(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  require_conforming(a, b);
  return (a + b).eval();
}

template <typename A, typename B>
auto multiply(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product dimensions do not conform");
  return (a * b).eval();
}

template <typename A>
auto adjoint(const Eigen::MatrixBase<A>& a) {
  return a.adjoint().eval();
}

template <typename A, typename B>
auto commutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  require_conforming(a, b);
  if (a.rows() != a.cols()) throw InvalidArgument("commutator needs square matrices");
  return (a * b - b * a).eval();
}

template <typename A, typename B>
auto anticommutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  require_conforming(a, b);
  if (a.rows() != a.cols()) throw InvalidArgument("anticommutator needs square matrices");
  return (a * b + b * a).eval();
}

/// ⟨ψ|M|ψ⟩.
template <typename M, typename V>
auto expectation(const Eigen::MatrixBase<M>& m, const Eigen::MatrixBase<V>& psi) {
  if (m.rows() != m.cols() || m.cols() != psi.rows() || psi.cols() != 1) {
    throw InvalidArgument("expectation: operator and state dimensions do not conform");
  }
  return psi.dot(m * psi);
}

template <typename A>
bool is_hermitian(const Eigen::MatrixBase<A>& a, double tol) {
  return a.rows() == a.cols() && (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Smallest eigenvalue of a Hermitian matrix (only the lower triangle is read).
double min_eigenvalue(const ComplexMatrix& hermitian);

ComplexVector basis_ket(int dim, int index);
ComplexMatrix basis_projector(int dim, int index);
/// |i⟩⟨j| in dimension dim.
ComplexMatrix basis_operator(int dim, int row, int col);

// ---------------------------------------------------------------------------
// States

/// Normalized pure state of a d-level system.
class StateVector {
 public:
  /// Throws InvalidArgument unless the amplitudes have unit norm within 1e-9.
  explicit StateVector(ComplexVector amplitudes);
  /// Rescales to unit norm; zero vectors are rejected.
  static StateVector normalized(ComplexVector amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_(i); }
  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityOperator {
 public:
  static constexpr double kHermitianTol = 1e-9;
  static constexpr double kTraceTol = 1e-8;
  static constexpr double kPositivityTol = 1e-7;

  /// Validates all three invariants; throws InvalidArgument on violation.
  explicit DensityOperator(ComplexMatrix matrix);
  static DensityOperator pure(const StateVector& psi);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }
  double purity() const { return (matrix_ * matrix_).trace().real(); }
  double min_eigenvalue() const { return holosim::min_eigenvalue(matrix_); }
  double population(int i) const { return matrix_(i, i).real(); }

 private:
  ComplexMatrix matrix_;
};

/// Pure qubit state c0|0⟩ + c1|1⟩.
class QubitState {
 public:
  QubitState(Complex c0, Complex c1);
  /// cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
  static QubitState from_bloch(double theta, double phi);

  Complex c0() const { return c0_; }
  Complex c1() const { return c1_; }
  QubitVector vector() const { return QubitVector(c0_, c1_); }
  RealVector3 bloch_vector() const;
  double theta() const;
  double phi() const;

 private:
  Complex c0_;
  Complex c1_;
};

/// Seeded Haar-random qubit states.
///
/// Two independent uniforms u, v ∈ [0,1) are drawn per state from
/// std::mt19937_64 (53-bit mantissa from the top bits of each draw) and
/// mapped to cosθ = 1 − 2u, φ = 2πv. The stream is bit-reproducible across
/// platforms for a fixed seed.
std::vector<QubitState> haar_qubit_sample(std::size_t count, std::uint64_t seed);

/// (c0, c1, 0, …, 0) in dimension dim.
StateVector embed_qubit(const QubitState& chi, int dim);
/// Top-left 2×2 block in the (|0⟩,|1⟩) ordering.
QubitMatrix project_qubit_block(const ComplexMatrix& m);
/// 2×2 operator placed in the top-left block of a dim×dim zero matrix.
ComplexMatrix embed_qubit_operator(const QubitMatrix& m, int dim);

}  // namespace holosim
