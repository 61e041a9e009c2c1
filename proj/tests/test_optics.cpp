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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "pcc/optics.hpp"
#include "pcc/tomography.hpp"
#include "test_helpers.hpp"

using namespace pcc;
using namespace pcc::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// Strips the global phase so two matrices can be compared up to e^{i theta}.
Matrix2c phase_normalized(const Matrix2c& m) {
  for (int i = 0; i < 4; ++i) {
    const Complex pivot = m(i / 2, i % 2);
    if (std::abs(pivot) > 1e-9) {
      return m * (std::abs(pivot) / pivot);
    }
  }
  return m;
}

bool is_unitary4(const Matrix4c& u, double tol) {
  return (u.adjoint() * u - Matrix4c::Identity()).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

TEST_CASE("half-wave plate Jones matrix") {
  const Matrix2c at_zero = hwp_jones(0.0);
  CHECK(std::abs(at_zero(0, 0) - Complex{1.0}) < 1e-15);
  CHECK(std::abs(at_zero(1, 1) - Complex{-1.0}) < 1e-15);
  CHECK(std::abs(at_zero(0, 1)) < 1e-15);

  const Matrix2c flip = hwp_jones(kPi / 4.0);
  CHECK(std::abs(flip(0, 1) - Complex{1.0}) < 1e-12);
  CHECK(std::abs(flip(1, 0) - Complex{1.0}) < 1e-12);
  CHECK(std::abs(flip(0, 0)) < 1e-12);

  // |<H|U|V>|^2 = sin^2(2 alpha): the V -> H conversion probability.
  for (double alpha : {kPi / 8.0, 0.3, 1.1}) {
    const Matrix2c u = hwp_jones(alpha);
    const double p = std::norm(u(0, 1));
    const double s = std::sin(2.0 * alpha);
    CHECK(std::abs(p - s * s) < 1e-12);
    // The V-column magnitudes follow the rotated-plate action.
    CHECK(std::abs(std::abs(u(1, 1)) - std::abs(std::cos(2.0 * alpha))) <
          1e-12);
    CHECK(is_unitary4(Eigen::kroneckerProduct(u, Matrix2c::Identity()),
                      1e-12));
  }
  CHECK(std::abs(std::norm(hwp_jones(kPi / 8.0)(0, 1)) - 0.5) < 1e-12);
}

TEST_CASE("quarter-wave plate Jones matrix") {
  // alpha = 0 is diag(1, i) up to global phase.
  Matrix2c expected;
  expected << 1.0, 0.0, 0.0, Complex{0.0, 1.0};
  CHECK((phase_normalized(qwp_jones(0.0)) - phase_normalized(expected))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  // alpha = pi/4 turns |H> into a circular state with |Bloch y| = 1.
  Vector2c h;
  h << 1.0, 0.0;
  const Vector2c out = qwp_jones(kPi / 4.0) * h;
  const Matrix2c rho = out * out.adjoint();
  CHECK(std::abs(std::abs(ref_expect_y(rho)) - 1.0) < 1e-12);

  // Two quarter-wave passes make a half-wave plate, up to global phase.
  for (double alpha : {0.0, 0.2, kPi / 8.0, 1.0}) {
    const Matrix2c twice = qwp_jones(alpha) * qwp_jones(alpha);
    CHECK((phase_normalized(twice) - phase_normalized(hwp_jones(alpha)))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    const Matrix2c gram = qwp_jones(alpha).adjoint() * qwp_jones(alpha);
    CHECK((gram - Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("polarizing beam splitter") {
  const Matrix4c u = pbs_unitary();
  Vector4c h0 = Vector4c::Zero();
  h0(0) = 1.0;
  CHECK((u * h0 - h0).cwiseAbs().maxCoeff() < 1e-15);  // (H,0) transmits
  Vector4c v0 = Vector4c::Zero();
  v0(2) = 1.0;
  Vector4c v1 = Vector4c::Zero();
  v1(3) = 1.0;
  CHECK((u * v0 - v1).cwiseAbs().maxCoeff() < 1e-15);  // (V,0) -> (V,1)
  CHECK((u * u - Matrix4c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("circuit compilation") {
  OpticalCircuit two_pbs{{OpticalElement::pbs(), OpticalElement::pbs()}};
  CHECK((compile_circuit(two_pbs) - Matrix4c::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  CHECK_THROWS_AS(compile_circuit(OpticalCircuit{}), std::invalid_argument);

  // Aligned Plus preset: both path-0 inputs return to path 0 with their
  // polarization unchanged up to the certified phase.
  const Matrix4c aligned =
      compile_circuit(sagnac_preset(0.0, Orientation::Plus));
  CHECK(std::abs(std::norm(aligned(0, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(std::norm(aligned(2, 2)) - 1.0) < 1e-12);

  // At alpha = pi/8 the V input converts to (H,1) with probability one half.
  const Matrix4c half = compile_circuit(
      sagnac_preset(kPi / 8.0, Orientation::Plus));
  CHECK(std::abs(std::norm(half(1, 2)) - 0.5) < 1e-12);
  CHECK(std::abs(std::norm(half(2, 2)) - 0.5) < 1e-12);
}

TEST_CASE("compiled circuits are unitary") {
  TestRng rng(71);
  for (int trial = 0; trial < 1000; ++trial) {
    OpticalCircuit circuit;
    const int length = 1 + static_cast<int>(rng.uniform() * 8.0);
    for (int e = 0; e < length; ++e) {
      const double pick = rng.uniform();
      const double angle = (rng.uniform() - 0.5) * 4.0 * kPi;
      const int path = rng.uniform() < 0.5 ? 0 : 1;
      if (pick < 0.25) {
        circuit.elements.push_back(OpticalElement::pbs());
      } else if (pick < 0.5) {
        circuit.elements.push_back(OpticalElement::hwp(angle, path));
      } else if (pick < 0.75) {
        circuit.elements.push_back(OpticalElement::qwp(angle, path));
      } else {
        circuit.elements.push_back(OpticalElement::path_remapper());
      }
    }
    CHECK(is_unitary4(compile_circuit(circuit), 1e-10));
  }
}

TEST_CASE("sagnac presets realize the published transformations") {
  // Plus at pi/8 on (V,0): half stays (V,0), half exits as (H,1).
  const Matrix4c plus =
      compile_circuit(sagnac_preset(kPi / 8.0, Orientation::Plus));
  Vector4c v0 = Vector4c::Zero();
  v0(2) = 1.0;
  const Vector4c plus_out = plus * v0;
  CHECK(std::abs(std::norm(plus_out(2)) - 0.5) < 1e-12);
  CHECK(std::abs(std::norm(plus_out(1)) - 0.5) < 1e-12);

  // Minus at pi/8 on (H,0): half stays (H,0), half exits as (V,1).
  const Matrix4c minus =
      compile_circuit(sagnac_preset(kPi / 8.0, Orientation::Minus));
  Vector4c h0 = Vector4c::Zero();
  h0(0) = 1.0;
  const Vector4c minus_out = minus * h0;
  CHECK(std::abs(std::norm(minus_out(0)) - 0.5) < 1e-12);
  CHECK(std::abs(std::norm(minus_out(3)) - 0.5) < 1e-12);

  // Plus at alpha = 0 returns (V,0) to itself up to phase.
  const Matrix4c aligned =
      compile_circuit(sagnac_preset(0.0, Orientation::Plus));
  const Vector4c aligned_out = aligned * v0;
  CHECK(std::abs(std::norm(aligned_out(2)) - 1.0) < 1e-12);
}

TEST_CASE("local-phase equivalence certification") {
  // The Plus preset realizes the Plus isometry for an 11-point angle grid.
  for (int k = 0; k <= 10; ++k) {
    const double alpha = kPi / 4.0 * k / 10.0;
    const CloningParameter q = waveplate_to_q(alpha);
    for (Orientation variant : {Orientation::Plus, Orientation::Minus}) {
      const Matrix4c u = compile_circuit(sagnac_preset(alpha, variant));
      const PhaseFit fit =
          equivalent_up_to_local_phase(u, pcc_isometry(q, variant));
      CHECK(fit.equivalent);
      CHECK(fit.residual < 1e-9);
      // The fitted phases are unimodular.
      for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(std::abs(fit.pol_phases(i)) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(fit.path_phases(i)) - 1.0) < 1e-12);
      }
    }
  }

  // Cross-machine comparison fails: the column supports differ.
  const Matrix4c minus_circ =
      compile_circuit(sagnac_preset(kPi / 8.0, Orientation::Minus));
  const PhaseFit cross = equivalent_up_to_local_phase(
      minus_circ, pcc_isometry(CloningParameter{0.5}, Orientation::Plus));
  CHECK_FALSE(cross.equivalent);

  // The target embedding certifies against itself with identity phases.
  const CloningIsometry iso = pcc_isometry(CloningParameter{0.3},
                                           Orientation::Plus);
  const PhaseFit self = equivalent_up_to_local_phase(embed_isometry(iso), iso);
  CHECK(self.equivalent);
  CHECK(self.residual < 1e-15);
  CHECK(std::abs(self.pol_phases(0) - Complex{1.0}) < 1e-12);
  CHECK(std::abs(self.pol_phases(1) - Complex{1.0}) < 1e-12);
  CHECK(std::abs(self.path_phases(0) - Complex{1.0}) < 1e-12);
  CHECK(std::abs(self.path_phases(1) - Complex{1.0}) < 1e-12);
}

TEST_CASE("clone marginals from the circuit match the ideal isometry") {
  TestRng rng(113);
  for (int k = 0; k < 7; ++k) {
    const double alpha = kPi / 4.0 * k / 6.0;
    const CloningParameter q = waveplate_to_q(alpha);
    for (Orientation variant : {Orientation::Plus, Orientation::Minus}) {
      const CloningIsometry iso = pcc_isometry(q, variant);
      const Matrix4c u = compile_circuit(sagnac_preset(alpha, variant));
      const PhaseFit fit = equivalent_up_to_local_phase(u, iso);
      REQUIRE(fit.equivalent);
      const Matrix4c corrected = apply_phase_correction(fit, u);
      for (int probe = 0; probe < 8; ++probe) {
        const PureState input = rng.random_pure(2);
        const DensityMatrix from_circuit = circuit_output(corrected, input);
        const DensityMatrix ideal = apply_cloner(iso, input);
        for (Subsystem side : {Subsystem::Bob, Subsystem::Eve}) {
          CHECK((partial_trace(from_circuit, side).entries() -
                 partial_trace(ideal, side).entries())
                    .cwiseAbs()
                    .maxCoeff() < 1e-10);
        }
      }
      // The certified corrections are diagonal, so sigma_z observables of
      // both marginals agree even without applying them.
      for (int k2 = 0; k2 < 8; ++k2) {
        const PureState psi = make_equatorial_state(2.0 * kPi * k2 / 8.0);
        const DensityMatrix raw = circuit_output(u, psi);
        const DensityMatrix ideal_joint = apply_cloner(iso, psi);
        for (Subsystem side : {Subsystem::Bob, Subsystem::Eve}) {
          CHECK(std::abs(expectation(partial_trace(raw, side), PauliAxis::Z) -
                         expectation(partial_trace(ideal_joint, side),
                                     PauliAxis::Z)) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("finite-shot tomography of a circuit-produced clone") {
  // The full chain: compile the loop at 22.5 degrees, certify and correct
  // its phases, send |D> through, reconstruct Bob's clone from sampled
  // counts. The estimate sits in the same band as for the ideal machine.
  const double alpha = kPi / 8.0;
  const CloningIsometry iso =
      pcc_isometry(waveplate_to_q(alpha), Orientation::Plus);
  const Matrix4c u = compile_circuit(sagnac_preset(alpha, Orientation::Plus));
  const PhaseFit fit = equivalent_up_to_local_phase(u, iso);
  REQUIRE(fit.equivalent);
  const PureState d = make_equatorial_state(0.0);
  const DensityMatrix bob = partial_trace(
      circuit_output(apply_phase_correction(fit, u), d), Subsystem::Bob);
  const TomographyResult result = tomography_pipeline(bob, 10000, 20, 314);
  const double estimate = fidelity_pure(d, result.rho);
  CHECK(estimate > 0.843);
  CHECK(estimate < 0.863);
}

TEST_CASE("polarization-path states") {
  Vector4c unnormalized;
  unnormalized << 1.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(PolPathState{unnormalized}, std::invalid_argument);

  const PolPathState injected =
      PolPathState::inject(make_equatorial_state(0.0));
  CHECK(std::abs(injected.amplitudes()(0) - Complex{0.7071067811865475}) <
        1e-12);
  CHECK(std::abs(injected.amplitudes()(1)) < 1e-15);  // path 1 empty
  CHECK(std::abs(injected.amplitudes()(2) - Complex{0.7071067811865475}) <
        1e-12);
  CHECK(injected.as_two_qubit().n_qubits() == 2);
}

TEST_CASE("path remapper turns the path qubit into polarization") {
  const Matrix4c m = element_unitary(OpticalElement::path_remapper());
  CHECK(is_unitary4(m, 1e-12));

  TestRng rng(131);
  for (int trial = 0; trial < 200; ++trial) {
    // A photon in polarization H carrying an arbitrary path qubit.
    const VectorXc chi = rng.random_amplitudes(2);
    Vector4c in = Vector4c::Zero();
    in(0) = chi(0);  // (H, 0)
    in(1) = chi(1);  // (H, 1)
    const Vector4c out =
        apply_unitary(m, PolPathState{in}).amplitudes();
    // Everything exits through path 0 with the path amplitudes transferred
    // onto polarization: mode 0 -> H, mode 1 -> V.
    CHECK(std::abs(out(0) - chi(0)) < 1e-12);
    CHECK(std::abs(out(2) - chi(1)) < 1e-12);
    CHECK(std::abs(out(1)) < 1e-12);
    CHECK(std::abs(out(3)) < 1e-12);

    // <sigma_z> of the path qubit before equals <sigma_z> of the
    // polarization qubit after.
    const Matrix4c rho_in = in * in.adjoint();
    const Matrix4c rho_out = out * out.adjoint();
    const double z_path_before = ref_expect_z(ref_partial_trace(rho_in, false));
    const double z_pol_after = ref_expect_z(ref_partial_trace(rho_out, true));
    CHECK(std::abs(z_path_before - z_pol_after) < 1e-12);
  }
}
