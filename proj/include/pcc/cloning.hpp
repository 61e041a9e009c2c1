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

#include "pcc/qstate.hpp"
#include "pcc/types.hpp"

namespace pcc {

// Which pole the cloner favors: Plus biases clones towards |0>, Minus is the
// bit-flip mirrored machine biasing towards |1>.
enum class Orientation { Plus, Minus };

// Asymmetry knob of the cloning operation, q in [0, 1]. q = 0 leaves Bob's
// qubit untouched, q = 1 hands it to Eve, q = 0.5 makes symmetric clones.
class CloningParameter {
 public:
  explicit CloningParameter(double q);
  double value() const { return q_; }

 private:
  double q_;
};

// 4x2 isometry embedding one qubit into the (Bob, Eve) pair, V^dag V = I.
// The canonical constructions have real non-negative columns.
class CloningIsometry {
 public:
  CloningIsometry(Matrix42c matrix, Orientation orientation);

  const Matrix42c& matrix() const { return matrix_; }
  Orientation orientation() const { return orientation_; }

 private:
  Matrix42c matrix_;
  Orientation orientation_;
};

// Eve's channel choice for one transmission.
class EveStrategy {
 public:
  enum class Kind { NoAttack, PccPlus, PccMinus, RandomMirrored };

  static EveStrategy no_attack();
  static EveStrategy pcc_plus(CloningParameter q);
  static EveStrategy pcc_minus(CloningParameter q);
  // Alternates between the two machines; p_plus is the probability of the
  // Plus machine (0.5 erases the sigma_z footprint).
  static EveStrategy random_mirrored(CloningParameter q, double p_plus);

  Kind kind() const { return kind_; }
  // Meaningful for the cloning kinds; 0 for NoAttack.
  CloningParameter q() const { return q_; }
  // Meaningful for RandomMirrored only.
  double p_plus() const { return p_plus_; }

 private:
  EveStrategy(Kind kind, CloningParameter q, double p_plus);

  Kind kind_;
  CloningParameter q_;
  double p_plus_;
};

// Builds the cloning isometry:
//   Plus:  |0> -> |00>,  |1> -> sqrt(1-q)|10> + sqrt(q)|01>
//   Minus: |1> -> |10>,  |0> -> sqrt(1-q)|00> + sqrt(q)|11>
CloningIsometry pcc_isometry(CloningParameter q, Orientation orientation);

// Constructs the Minus machine by conjugating the Plus machine with bit
// flips: (X_B (x) I_E) V_plus X. Equal to pcc_isometry(q, Minus).
CloningIsometry mirrored_via_bitflips(CloningParameter q);

// V rho V^dag; pure inputs give pure joint outputs.
DensityMatrix apply_cloner(const CloningIsometry& iso, const PureState& input);
DensityMatrix apply_cloner(const CloningIsometry& iso,
                           const DensityMatrix& input);

struct CloneFidelities {
  double bob;
  double eve;
};

// Closed-form equatorial clone fidelities:
// F_B = (1 + sqrt(1-q))/2, F_E = (1 + sqrt(q))/2.
// Bob's form holds for every equatorial input under either orientation.
// Eve's holds for every input under Plus; under Minus her clone tracks the
// phase-conjugated input, so her form holds against the conjugate target
// (the two coincide on the sigma_x eigenstates).
CloneFidelities analytic_fidelities(CloningParameter q);

// Cloning strength produced by a half-wave plate at physical angle alpha:
// q = sin^2(2 alpha).
CloningParameter waveplate_to_q(double alpha);

// Ensemble-average output of a strategy on a single-qubit input:
//   NoAttack       -> input (x) |0><0|
//   PccPlus/Minus  -> V rho V^dag
//   RandomMirrored -> p_plus rho_plus + (1 - p_plus) rho_minus
// Per-shot random machine choice lives in the protocol module; this is the
// exact mixture channel.
DensityMatrix strategy_output(const EveStrategy& strategy,
                              const DensityMatrix& input);

// <sigma_z> of Bob's marginal when the equatorial state with phase phi is
// sent through the strategy. Equals +q, -q and 0 for PccPlus, PccMinus and
// the balanced mixture, independent of phi.
double bob_sigma_z_bias(const EveStrategy& strategy, double phi);

}  // namespace pcc
