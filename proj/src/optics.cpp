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

#include "pcc/optics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace pcc {

namespace {

constexpr double kPhaseFitTol = 1e-9;

// Embeds a Jones matrix as the action on the polarization of one path mode,
// identity on the other. Pol/path index layout: i = 2*pol + path.
Matrix4c embed_jones(const Matrix2c& jones, int path) {
  Matrix4c u = Matrix4c::Identity();
  const int h = path;      // (H, path)
  const int v = 2 + path;  // (V, path)
  u(h, h) = jones(0, 0);
  u(h, v) = jones(0, 1);
  u(v, h) = jones(1, 0);
  u(v, v) = jones(1, 1);
  return u;
}

Matrix2c rotation(double alpha) {
  Matrix2c r;
  r << std::cos(alpha), -std::sin(alpha), std::sin(alpha), std::cos(alpha);
  return r;
}

}  // namespace

OpticalElement::OpticalElement(Kind kind, double angle, int path)
    : kind_(kind), angle_(angle), path_(path) {}

PolPathState::PolPathState(Vector4c amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (!amplitudes_.allFinite()) {
    throw std::invalid_argument("state amplitudes must be finite");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kInvariantTol) {
    throw std::invalid_argument("polarization-path state is not normalized");
  }
}

PolPathState PolPathState::inject(const PureState& polarization) {
  if (polarization.n_qubits() != 1) {
    throw std::invalid_argument("injected polarization must be a single qubit");
  }
  Vector4c amps = Vector4c::Zero();
  amps(0) = polarization.amplitudes()(0);  // (H, 0)
  amps(2) = polarization.amplitudes()(1);  // (V, 0)
  return PolPathState(amps);
}

PureState PolPathState::as_two_qubit() const {
  return PureState(amplitudes_);
}

OpticalElement OpticalElement::pbs() {
  return OpticalElement(Kind::Pbs, 0.0, 0);
}

OpticalElement OpticalElement::hwp(double angle, int path) {
  if (!std::isfinite(angle)) {
    throw std::invalid_argument("waveplate angle must be finite");
  }
  if (path != 0 && path != 1) {
    throw std::invalid_argument("waveplate path must be 0 or 1");
  }
  return OpticalElement(Kind::Hwp, angle, path);
}

OpticalElement OpticalElement::qwp(double angle, int path) {
  if (!std::isfinite(angle)) {
    throw std::invalid_argument("waveplate angle must be finite");
  }
  if (path != 0 && path != 1) {
    throw std::invalid_argument("waveplate path must be 0 or 1");
  }
  return OpticalElement(Kind::Qwp, angle, path);
}

OpticalElement OpticalElement::path_remapper() {
  return OpticalElement(Kind::PathRemapper, 0.0, 0);
}

Matrix2c hwp_jones(double alpha) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("waveplate angle must be finite");
  }
  const double c = std::cos(2.0 * alpha);
  const double s = std::sin(2.0 * alpha);
  Matrix2c m;
  m << c, s, s, -c;
  return m;
}

Matrix2c qwp_jones(double alpha) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("waveplate angle must be finite");
  }
  Matrix2c retarder;
  retarder << 1.0, 0.0, 0.0, Complex{0.0, 1.0};
  return rotation(alpha) * retarder * rotation(-alpha);
}

Matrix4c pbs_unitary() {
  // H transmits, V reflects into the other path: 0->0, 1->1, 2->3, 3->2.
  Matrix4c u = Matrix4c::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(3, 2) = 1.0;
  u(2, 3) = 1.0;
  return u;
}

Matrix4c element_unitary(const OpticalElement& element) {
  switch (element.kind()) {
    case OpticalElement::Kind::Pbs:
      return pbs_unitary();
    case OpticalElement::Kind::Hwp:
      return embed_jones(hwp_jones(element.angle()), element.path());
    case OpticalElement::Kind::Qwp:
      return embed_jones(qwp_jones(element.angle()), element.path());
    case OpticalElement::Kind::PathRemapper:
      // The 45-degree half-wave plate on path 1 followed by a PBS pass.
      return pbs_unitary() *
             embed_jones(hwp_jones(std::numbers::pi / 4.0), 1);
  }
  throw std::logic_error("unreachable element kind");
}

Matrix4c compile_circuit(const OpticalCircuit& circuit) {
  if (circuit.elements.empty()) {
    throw std::invalid_argument("optical circuit must not be empty");
  }
  Matrix4c u = Matrix4c::Identity();
  for (const OpticalElement& element : circuit.elements) {
    u = element_unitary(element) * u;
  }
  if ((u.adjoint() * u - Matrix4c::Identity()).cwiseAbs().maxCoeff() >
      kInvariantTol) {
    throw std::logic_error("compiled circuit is not unitary");
  }
  return u;
}

OpticalCircuit sagnac_preset(double alpha, Orientation variant) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("waveplate angle must be finite");
  }
  // Entry PBS routes V into path 1 (the reflected arm) and keeps H in path 0;
  // the exit PBS merges the arms back. H1 sits on path 1, H2 on path 0.
  OpticalCircuit circuit;
  circuit.elements.push_back(OpticalElement::pbs());
  if (variant == Orientation::Plus) {
    circuit.elements.push_back(OpticalElement::hwp(alpha, 1));
    circuit.elements.push_back(OpticalElement::hwp(0.0, 0));
  } else {
    circuit.elements.push_back(OpticalElement::hwp(0.0, 1));
    circuit.elements.push_back(OpticalElement::hwp(alpha, 0));
  }
  circuit.elements.push_back(OpticalElement::pbs());
  return circuit;
}

Matrix4c embed_isometry(const CloningIsometry& iso) {
  Matrix4c u = Matrix4c::Zero();
  u.col(0) = iso.matrix().col(0);  // input (H, 0) = |0>
  u.col(2) = iso.matrix().col(1);  // input (V, 0) = |1>
  return u;
}

PhaseFit equivalent_up_to_local_phase(const Matrix4c& u,
                                      const CloningIsometry& target) {
  const Matrix4c t = embed_isometry(target);
  constexpr int kSectorCols[2] = {0, 2};
  constexpr double kZeroTol = 1e-12;

  // Per-output-row phase demanded by the target, where determined.
  Complex row_phase[4];
  bool row_constrained[4] = {false, false, false, false};
  for (int c : kSectorCols) {
    for (int i = 0; i < 4; ++i) {
      if (std::abs(t(i, c)) > kZeroTol && std::abs(u(i, c)) > kZeroTol &&
          !row_constrained[i]) {
        Complex d = t(i, c) / u(i, c);
        row_phase[i] = d / std::abs(d);
        row_constrained[i] = true;
      }
    }
  }

  // Factor the row phases as z_pol(r) * z_path(s), i = 2r + s, propagating
  // through the constraint graph; leftover gauge freedom defaults to 1.
  Complex pol[2];
  Complex path[2];
  bool pol_known[2] = {false, false};
  bool path_known[2] = {false, false};
  for (int i = 0; i < 4; ++i) {
    if (row_constrained[i]) {
      pol[i / 2] = row_phase[i];
      pol_known[i / 2] = true;
      path[i % 2] = 1.0;
      path_known[i % 2] = true;
      break;
    }
  }
  for (int pass = 0; pass < 4; ++pass) {
    for (int i = 0; i < 4; ++i) {
      if (!row_constrained[i]) continue;
      const int r = i / 2;
      const int s = i % 2;
      if (pol_known[r] && !path_known[s]) {
        path[s] = row_phase[i] / pol[r];
        path_known[s] = true;
      } else if (path_known[s] && !pol_known[r]) {
        pol[r] = row_phase[i] / path[s];
        pol_known[r] = true;
      }
    }
  }
  for (int k = 0; k < 2; ++k) {
    if (!pol_known[k]) pol[k] = 1.0;
    if (!path_known[k]) path[k] = 1.0;
  }

  PhaseFit fit;
  fit.pol_phases = Vector2c(pol[0], pol[1]);
  fit.path_phases = Vector2c(path[0], path[1]);
  const Matrix4c corrected = apply_phase_correction(fit, u);
  double residual = 0.0;
  for (int c : kSectorCols) {
    residual =
        std::max(residual, (corrected.col(c) - t.col(c)).cwiseAbs().maxCoeff());
  }
  fit.residual = residual;
  fit.equivalent = residual < kPhaseFitTol;
  return fit;
}

Matrix4c apply_phase_correction(const PhaseFit& fit, const Matrix4c& u) {
  const Matrix2c d_pol = fit.pol_phases.asDiagonal();
  const Matrix2c d_path = fit.path_phases.asDiagonal();
  return Eigen::kroneckerProduct(d_pol, d_path) * u;
}

PolPathState apply_unitary(const Matrix4c& u, const PolPathState& state) {
  return PolPathState(u * state.amplitudes());
}

DensityMatrix circuit_output(const Matrix4c& u, const PureState& input) {
  const PolPathState out = apply_unitary(u, PolPathState::inject(input));
  return density(out.as_two_qubit());
}

}  // namespace pcc
