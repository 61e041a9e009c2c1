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

#include <complex>

#include <Eigen/Dense>

namespace pcc {

using Complex = std::complex<double>;

using Vector2c = Eigen::Vector2cd;
using Vector3d = Eigen::Vector3d;
using Vector4c = Eigen::Vector4cd;
using VectorXc = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using MatrixXc = Eigen::MatrixXcd;
// 4x2 isometry: one qubit in, two qubits out.
using Matrix42c = Eigen::Matrix<Complex, 4, 2>;

// Numerical tolerances used project-wide: structural invariants are checked
// to 1e-10, analytic identities to 1e-12.
inline constexpr double kInvariantTol = 1e-10;
inline constexpr double kAnalyticTol = 1e-12;

}  // namespace pcc
