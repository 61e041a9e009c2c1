// Copyright 2026 The pccsim developers
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

#include "pcc/types.hpp"

namespace pcc {

// Global basis conventions, used by every module:
//   |0> is the horizontal polarization H, |1> is vertical V.
//   Joint objects are ordered (Bob, Eve): basis {00, 01, 10, 11} with Bob
//   the most significant qubit. All values are immutable after construction
//   and safe to share between threads.

enum class PauliAxis { X, Y, Z };

// Subsystem of a two-qubit state: Bob is the first tensor factor, Eve the
// second.
enum class Subsystem { Bob, Eve };

// Normalized state vector of n qubits (dimension 2^n). The public surface of
// the toolkit only produces 1- and 2-qubit states; larger states are allowed
// as intermediates of tensor composition.
class PureState {
 public:
  // Validates: finite entries, power-of-two dimension >= 2, unit norm
  // within 1e-10.
  explicit PureState(VectorXc amplitudes);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const VectorXc& amplitudes() const { return amplitudes_; }

 private:
  int n_qubits_;
  VectorXc amplitudes_;
};

// Hermitian, unit-trace, positive-semidefinite matrix of n qubits.
class DensityMatrix {
 public:
  // Validates: finite entries, Hermitian and unit trace within 1e-10,
  // eigenvalues >= -1e-10.
  explicit DensityMatrix(MatrixXc entries);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const MatrixXc& entries() const { return entries_; }

 private:
  int n_qubits_;
  MatrixXc entries_;
};

// Pauli expectation triple of a single-qubit state; norm <= 1 + 1e-9.
class BlochVector {
 public:
  BlochVector(double x, double y, double z);

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Vector3d& coords() const { return v_; }
  double norm() const { return v_.norm(); }

 private:
  Vector3d v_;
};

// --- constructors -----------------------------------------------------------

// Equatorial state (|0> + e^{i phi} |1>)/sqrt(2). Rejects non-finite phi.
PureState make_equatorial_state(double phi);

// Real-amplitude state cos(2 theta)|H> + sin(2 theta)|V>. Rejects non-finite
// theta.
PureState make_polar_state(double theta);

// Computational basis state |k> of one qubit (k in {0, 1}).
PureState basis_state(int k);

// |psi><psi| as a DensityMatrix.
DensityMatrix density(const PureState& psi);

// rho = (I + x sx + y sy + z sz) / 2.
DensityMatrix density_from_bloch(const BlochVector& v);

// --- composition and reduction ----------------------------------------------

// Kronecker composition, first argument as the more significant factor.
PureState tensor_product(const PureState& a, const PureState& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

// Reduces a two-qubit state to the kept subsystem. Rejects inputs that are
// not two-qubit.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

// --- figures of merit ---------------------------------------------------

// <psi| rho |psi> for single-qubit psi and rho. Rejects dimension mismatch.
double fidelity_pure(const PureState& psi, const DensityMatrix& rho);

// Tr(rho sigma_axis) for a single-qubit rho.
double expectation(const DensityMatrix& rho, PauliAxis axis);

BlochVector bloch_vector(const DensityMatrix& rho);

// Tr(rho^2).
double purity(const DensityMatrix& rho);

// Pauli matrix for the given axis.
Matrix2c pauli(PauliAxis axis);

}  // namespace pcc
