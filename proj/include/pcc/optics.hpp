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

#include <vector>

#include "pcc/cloning.hpp"
#include "pcc/qstate.hpp"
#include "pcc/types.hpp"

namespace pcc {

// The optical model lives on the 4-dimensional polarization (x) path space
// with basis {(H,0), (H,1), (V,0), (V,1)}; the index is 2*pol + path, which
// coincides with the (Bob, Eve) qubit ordering of the cloning module.

// One element of a polarization/path circuit. Waveplates act on the
// polarization of a single path mode; the PBS couples polarization to path;
// the path remapper is the 45-degree half-wave plate on path 1 followed by a
// PBS pass, which transfers a path qubit onto polarization.
class OpticalElement {
 public:
  enum class Kind { Pbs, Hwp, Qwp, PathRemapper };

  static OpticalElement pbs();
  static OpticalElement hwp(double angle, int path);
  static OpticalElement qwp(double angle, int path);
  static OpticalElement path_remapper();

  Kind kind() const { return kind_; }
  double angle() const { return angle_; }
  int path() const { return path_; }

 private:
  OpticalElement(Kind kind, double angle, int path);

  Kind kind_;
  double angle_;
  int path_;
};

// Ordered element list, first element applied first.
struct OpticalCircuit {
  std::vector<OpticalElement> elements;
};

// Single-photon state on the polarization (x) path space. Because the index
// is 2*pol + path, conversion to and from the (Bob, Eve) two-qubit picture
// is a relabeling.
class PolPathState {
 public:
  // Validates finite entries and unit norm within 1e-10.
  explicit PolPathState(Vector4c amplitudes);

  // Photon entering the apparatus in path mode 0.
  static PolPathState inject(const PureState& polarization);

  const Vector4c& amplitudes() const { return amplitudes_; }
  PureState as_two_qubit() const;

 private:
  Vector4c amplitudes_;
};

// Verdict of the local-phase equivalence check between a compiled circuit
// and an ideal cloning isometry. The correction (D_pol (x) D_path) * u
// matches the target on the path-0 input columns when equivalent is true;
// residual is the max-norm mismatch after the best phase fit.
struct PhaseFit {
  bool equivalent = false;
  Vector2c pol_phases = Vector2c::Ones();
  Vector2c path_phases = Vector2c::Ones();
  double residual = 0.0;
};

// Jones matrix of a half-wave plate with fast axis at alpha, in the (H, V)
// basis: [[cos 2a, sin 2a], [sin 2a, -cos 2a]].
Matrix2c hwp_jones(double alpha);

// Jones matrix of a quarter-wave plate with fast axis at alpha. Convention:
// R(alpha) diag(1, i) R(-alpha), so qwp(a)^2 = hwp(a).
Matrix2c qwp_jones(double alpha);

// Polarizing beam splitter: transmits H, reflects V into the other path.
Matrix4c pbs_unitary();

// 4x4 action of a single element on the polarization (x) path space.
Matrix4c element_unitary(const OpticalElement& element);

// Ordered product of the element actions. Throws logic_error if the result
// fails the unitarity check, which indicates a broken element model.
Matrix4c compile_circuit(const OpticalCircuit& circuit);

// The displaced-Sagnac cloning loop: entry PBS, one rotated and one fixed
// half-wave plate on the two arms, exit PBS. Plus rotates the plate on the
// reflected (V) arm; Minus rotates the plate on the transmitted (H) arm.
// Compiled, it realizes the cloning isometry with q = sin^2(2 alpha) up to
// local diagonal phases.
OpticalCircuit sagnac_preset(double alpha, Orientation variant);

// Embeds a 4x2 isometry as a 4x4 matrix acting on the path-0 input sector;
// the path-1 input columns are zero (the embedding is compared column-wise,
// not used as a unitary).
Matrix4c embed_isometry(const CloningIsometry& iso);

// Searches diagonal corrections D_pol (x) D_path with unimodular entries
// such that the corrected u matches the target isometry on the path-0 input
// columns within 1e-9. A false verdict is a result, not an error.
PhaseFit equivalent_up_to_local_phase(const Matrix4c& u,
                                      const CloningIsometry& target);

// Applies the fitted phase correction: kron(D_pol, D_path) * u.
Matrix4c apply_phase_correction(const PhaseFit& fit, const Matrix4c& u);

PolPathState apply_unitary(const Matrix4c& u, const PolPathState& state);

// Sends a single-qubit input through the circuit unitary with the path mode
// prepared in |0>, returning the joint (polarization, path) output state as
// a two-qubit density matrix.
DensityMatrix circuit_output(const Matrix4c& u, const PureState& input);

}  // namespace pcc
