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

#include "pcc/qstate.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>

namespace pcc {

namespace {

int qubit_count_for_dim(Eigen::Index dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("state dimension must be a power of two >= 2");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

}  // namespace

PureState::PureState(VectorXc amplitudes) : amplitudes_(std::move(amplitudes)) {
  n_qubits_ = qubit_count_for_dim(amplitudes_.size());
  if (!amplitudes_.allFinite()) {
    throw std::invalid_argument("state amplitudes must be finite");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kInvariantTol) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

DensityMatrix::DensityMatrix(MatrixXc entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  n_qubits_ = qubit_count_for_dim(entries_.rows());
  if (!entries_.allFinite()) {
    throw std::invalid_argument("density matrix entries must be finite");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kInvariantTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex{1.0}) > kInvariantTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(entries_,
                                                 Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kInvariantTol) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

BlochVector::BlochVector(double x, double y, double z) : v_(x, y, z) {
  if (!v_.allFinite()) {
    throw std::invalid_argument("Bloch components must be finite");
  }
  if (v_.squaredNorm() > 1.0 + 1e-9) {
    throw std::invalid_argument("Bloch vector lies outside the unit ball");
  }
}

PureState make_equatorial_state(double phi) {
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("equatorial phase must be finite");
  }
  const double r = 1.0 / std::sqrt(2.0);
  Vector2c amps{Complex{r, 0.0}, std::polar(r, phi)};
  return PureState(amps);
}

PureState make_polar_state(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("polar angle must be finite");
  }
  Vector2c amps{Complex{std::cos(2.0 * theta), 0.0},
                Complex{std::sin(2.0 * theta), 0.0}};
  return PureState(amps);
}

PureState basis_state(int k) {
  if (k != 0 && k != 1) {
    throw std::invalid_argument("basis state index must be 0 or 1");
  }
  Vector2c amps = Vector2c::Zero();
  amps(k) = 1.0;
  return PureState(amps);
}

DensityMatrix density(const PureState& psi) {
  const VectorXc& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

DensityMatrix density_from_bloch(const BlochVector& v) {
  Matrix2c m = 0.5 * (Matrix2c::Identity() + v.x() * pauli(PauliAxis::X) +
                      v.y() * pauli(PauliAxis::Y) + v.z() * pauli(PauliAxis::Z));
  return DensityMatrix(m);
}

PureState tensor_product(const PureState& a, const PureState& b) {
  VectorXc out = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
  return PureState(std::move(out));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  MatrixXc out = Eigen::kroneckerProduct(a.entries(), b.entries());
  return DensityMatrix(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  if (rho.n_qubits() != 2) {
    throw std::invalid_argument("partial trace expects a two-qubit state");
  }
  const MatrixXc& r = rho.entries();
  Matrix2c out = Matrix2c::Zero();
  // Joint index is 2*b + e with b the Bob (first) qubit.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int t = 0; t < 2; ++t) {
        if (keep == Subsystem::Bob) {
          out(i, j) += r(2 * i + t, 2 * j + t);
        } else {
          out(i, j) += r(2 * t + i, 2 * t + j);
        }
      }
    }
  }
  return DensityMatrix(out);
}

double fidelity_pure(const PureState& psi, const DensityMatrix& rho) {
  if (psi.n_qubits() != 1 || rho.n_qubits() != 1) {
    throw std::invalid_argument("fidelity_pure expects single-qubit inputs");
  }
  const Complex val = (psi.amplitudes().adjoint() * rho.entries() *
                       psi.amplitudes())(0, 0);
  return val.real();
}

double expectation(const DensityMatrix& rho, PauliAxis axis) {
  if (rho.n_qubits() != 1) {
    throw std::invalid_argument("expectation expects a single-qubit state");
  }
  return (rho.entries() * pauli(axis)).trace().real();
}

BlochVector bloch_vector(const DensityMatrix& rho) {
  return BlochVector(expectation(rho, PauliAxis::X),
                     expectation(rho, PauliAxis::Y),
                     expectation(rho, PauliAxis::Z));
}

double purity(const DensityMatrix& rho) {
  return (rho.entries() * rho.entries()).trace().real();
}

Matrix2c pauli(PauliAxis axis) {
  Matrix2c m;
  switch (axis) {
    case PauliAxis::X:
      m << 0, 1, 1, 0;
      break;
    case PauliAxis::Y:
      m << Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0};
      break;
    case PauliAxis::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

}  // namespace pcc
