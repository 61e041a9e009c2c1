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

#include "pcc/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pcc/rng.hpp"

namespace pcc {

namespace {

constexpr PauliAxis kAxes[3] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};

Vector3d exact_expectations(const DensityMatrix& rho) {
  return Vector3d(expectation(rho, PauliAxis::X),
                  expectation(rho, PauliAxis::Y),
                  expectation(rho, PauliAxis::Z));
}

}  // namespace

CountRecord simulate_counts(const DensityMatrix& rho, PauliAxis axis,
                            long shots, std::uint64_t seed) {
  if (shots < 1) {
    throw std::invalid_argument("shot count must be at least 1");
  }
  const double p_plus =
      std::clamp(0.5 * (1.0 + expectation(rho, axis)), 0.0, 1.0);
  SplitMix64 rng(seed);
  long n_plus = 0;
  for (long s = 0; s < shots; ++s) {
    if (rng.bernoulli(p_plus)) ++n_plus;
  }
  return CountRecord{axis, n_plus, shots - n_plus, seed};
}

Matrix2c linear_inversion(const Vector3d& bloch_hat) {
  return 0.5 * (Matrix2c::Identity() + bloch_hat.x() * pauli(PauliAxis::X) +
                bloch_hat.y() * pauli(PauliAxis::Y) +
                bloch_hat.z() * pauli(PauliAxis::Z));
}

Matrix2c linear_inversion(const std::vector<CountRecord>& records) {
  Vector3d hat = Vector3d::Zero();
  bool seen[3] = {false, false, false};
  for (const CountRecord& record : records) {
    const int k = static_cast<int>(record.axis);
    if (seen[k]) {
      throw std::invalid_argument("duplicate measurement axis in records");
    }
    if (record.shots() < 1) {
      throw std::invalid_argument("record has no shots");
    }
    seen[k] = true;
    hat(k) = static_cast<double>(record.n_plus - record.n_minus) /
             static_cast<double>(record.shots());
  }
  if (!seen[0] || !seen[1] || !seen[2]) {
    throw std::invalid_argument("records must cover the X, Y and Z axes");
  }
  return linear_inversion(hat);
}

DensityMatrix project_physical(const Matrix2c& m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("projection input must be Hermitian");
  }
  if (std::abs(m.trace() - Complex{1.0}) > 1e-9) {
    throw std::invalid_argument("projection input must have unit trace");
  }
  Vector3d v((m * pauli(PauliAxis::X)).trace().real(),
             (m * pauli(PauliAxis::Y)).trace().real(),
             (m * pauli(PauliAxis::Z)).trace().real());
  const double norm = v.norm();
  if (norm <= 1.0) {
    // Already positive semidefinite for a trace-1 Hermitian 2x2 matrix.
    return DensityMatrix(m);
  }
  return density_from_bloch(BlochVector(v.x() / norm, v.y() / norm,
                                        v.z() / norm));
}

TomographyResult tomography_pipeline(const DensityMatrix& rho_true, long shots,
                                     int repeats, std::uint64_t seed,
                                     ShotModel model) {
  if (rho_true.n_qubits() != 1) {
    throw std::invalid_argument("tomography expects a single-qubit state");
  }
  if (shots < 1) {
    throw std::invalid_argument("shot count must be at least 1");
  }
  if (repeats < 1) {
    throw std::invalid_argument("repeat count must be at least 1");
  }

  std::vector<Vector3d> blochs;
  blochs.reserve(repeats);
  Matrix2c mean = Matrix2c::Zero();
  for (int r = 0; r < repeats; ++r) {
    Vector3d hat;
    if (model == ShotModel::Exact) {
      hat = exact_expectations(rho_true);
    } else {
      for (int a = 0; a < 3; ++a) {
        const CountRecord record = simulate_counts(
            rho_true, kAxes[a], shots, derive_stream(seed, r, a));
        hat(a) = static_cast<double>(record.n_plus - record.n_minus) /
                 static_cast<double>(record.shots());
      }
    }
    const DensityMatrix reconstructed = project_physical(linear_inversion(hat));
    blochs.push_back(bloch_vector(reconstructed).coords());
    mean += reconstructed.entries();
  }
  mean /= static_cast<double>(repeats);

  Vector3d avg = Vector3d::Zero();
  for (const Vector3d& b : blochs) avg += b;
  avg /= static_cast<double>(repeats);
  Vector3d std_errors = Vector3d::Zero();
  if (repeats > 1) {
    for (const Vector3d& b : blochs) {
      std_errors += (b - avg).cwiseAbs2();
    }
    std_errors = (std_errors / static_cast<double>(repeats - 1)).cwiseSqrt();
  }

  DensityMatrix rho = project_physical(mean);
  BlochVector estimate = bloch_vector(rho);
  return TomographyResult{std::move(rho), estimate, std_errors,
                          std::move(blochs)};
}

}  // namespace pcc
