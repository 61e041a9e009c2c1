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

#include <cstdint>
#include <vector>

#include "pcc/qstate.hpp"
#include "pcc/types.hpp"

namespace pcc {

// Outcome tally of one projective measurement setting.
struct CountRecord {
  PauliAxis axis = PauliAxis::Z;
  long n_plus = 0;
  long n_minus = 0;
  std::uint64_t seed = 0;

  long shots() const { return n_plus + n_minus; }
};

// Replaces sampling with exact expectation values; separates model error
// (zero) from statistical error in tests and sweeps.
enum class ShotModel { Sampled, Exact };

struct TomographyResult {
  DensityMatrix rho;
  BlochVector bloch_estimate;
  // Sample standard deviation across repeats of the per-repeat Bloch
  // component estimates, per axis (x, y, z); zero for a single repeat.
  Vector3d std_errors;
  // Per-repeat reconstructed (physical) Bloch vectors, for downstream
  // figure-of-merit statistics.
  std::vector<Vector3d> repeat_blochs;
};

// Draws n_plus from Binomial(shots, (1 + <sigma_axis>)/2) by summing
// Bernoulli trials from the splitmix64 stream of the given seed. Identical
// arguments reproduce identical counts on every platform. Rejects
// shots < 1.
CountRecord simulate_counts(const DensityMatrix& rho, PauliAxis axis,
                            long shots, std::uint64_t seed);

// (I + x sx + y sy + z sz)/2 for raw component estimates; may be
// non-positive.
Matrix2c linear_inversion(const Vector3d& bloch_hat);

// Linear inversion from one record per Pauli axis, with component estimates
// (n_plus - n_minus)/shots. Rejects record sets that do not cover X, Y and Z
// exactly once.
Matrix2c linear_inversion(const std::vector<CountRecord>& records);

// Returns the input when it is already a physical state; otherwise shrinks
// the Bloch vector radially onto the unit sphere, which is the closest
// physical state in Bloch distance. Rejects non-Hermitian input and traces
// away from 1 by more than 1e-9.
DensityMatrix project_physical(const Matrix2c& m);

// Full finite-shot pipeline: simulate counts per axis per repeat (substream
// derived from (seed, repeat, axis)), reconstruct and project per repeat,
// average. The Exact shot model bypasses sampling and reproduces rho_true.
TomographyResult tomography_pipeline(const DensityMatrix& rho_true, long shots,
                                     int repeats, std::uint64_t seed,
                                     ShotModel model = ShotModel::Sampled);

}  // namespace pcc
