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

#include "pcc/cloning.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>

namespace pcc {

CloningParameter::CloningParameter(double q) : q_(q) {
  if (!std::isfinite(q) || q < 0.0 || q > 1.0) {
    throw std::invalid_argument("cloning parameter must lie in [0, 1]");
  }
}

CloningIsometry::CloningIsometry(Matrix42c matrix, Orientation orientation)
    : matrix_(std::move(matrix)), orientation_(orientation) {
  const Matrix2c gram = matrix_.adjoint() * matrix_;
  if ((gram - Matrix2c::Identity()).cwiseAbs().maxCoeff() > kInvariantTol) {
    throw std::invalid_argument("cloning map is not an isometry");
  }
}

EveStrategy::EveStrategy(Kind kind, CloningParameter q, double p_plus)
    : kind_(kind), q_(q), p_plus_(p_plus) {}

EveStrategy EveStrategy::no_attack() {
  return EveStrategy(Kind::NoAttack, CloningParameter(0.0), 1.0);
}

EveStrategy EveStrategy::pcc_plus(CloningParameter q) {
  return EveStrategy(Kind::PccPlus, q, 1.0);
}

EveStrategy EveStrategy::pcc_minus(CloningParameter q) {
  return EveStrategy(Kind::PccMinus, q, 0.0);
}

EveStrategy EveStrategy::random_mirrored(CloningParameter q, double p_plus) {
  if (!std::isfinite(p_plus) || p_plus < 0.0 || p_plus > 1.0) {
    throw std::invalid_argument("mixture weight must lie in [0, 1]");
  }
  return EveStrategy(Kind::RandomMirrored, q, p_plus);
}

CloningIsometry pcc_isometry(CloningParameter q, Orientation orientation) {
  const double root_q = std::sqrt(q.value());
  const double root_1mq = std::sqrt(1.0 - q.value());
  Matrix42c v = Matrix42c::Zero();
  // Basis order {00, 01, 10, 11}, (Bob, Eve).
  if (orientation == Orientation::Plus) {
    v(0, 0) = 1.0;       // |0> -> |00>
    v(2, 1) = root_1mq;  // |1> -> sqrt(1-q)|10>
    v(1, 1) = root_q;    //        + sqrt(q)|01>
  } else {
    v(2, 1) = 1.0;       // |1> -> |10>
    v(0, 0) = root_1mq;  // |0> -> sqrt(1-q)|00>
    v(3, 0) = root_q;    //        + sqrt(q)|11>
  }
  return CloningIsometry(v, orientation);
}

CloningIsometry mirrored_via_bitflips(CloningParameter q) {
  const Matrix2c x = pauli(PauliAxis::X);
  const Matrix4c x_bob = Eigen::kroneckerProduct(x, Matrix2c::Identity());
  const Matrix42c v =
      x_bob * pcc_isometry(q, Orientation::Plus).matrix() * x;
  return CloningIsometry(v, Orientation::Minus);
}

DensityMatrix apply_cloner(const CloningIsometry& iso, const PureState& input) {
  if (input.n_qubits() != 1) {
    throw std::invalid_argument("cloner expects a single-qubit input");
  }
  const Vector4c out = iso.matrix() * input.amplitudes();
  return DensityMatrix(out * out.adjoint());
}

DensityMatrix apply_cloner(const CloningIsometry& iso,
                           const DensityMatrix& input) {
  if (input.n_qubits() != 1) {
    throw std::invalid_argument("cloner expects a single-qubit input");
  }
  return DensityMatrix(iso.matrix() * input.entries() *
                       iso.matrix().adjoint());
}

CloneFidelities analytic_fidelities(CloningParameter q) {
  return CloneFidelities{0.5 * (1.0 + std::sqrt(1.0 - q.value())),
                         0.5 * (1.0 + std::sqrt(q.value()))};
}

CloningParameter waveplate_to_q(double alpha) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("waveplate angle must be finite");
  }
  const double s = std::sin(2.0 * alpha);
  return CloningParameter(s * s);
}

DensityMatrix strategy_output(const EveStrategy& strategy,
                              const DensityMatrix& input) {
  switch (strategy.kind()) {
    case EveStrategy::Kind::NoAttack:
      return tensor_product(input, density(basis_state(0)));
    case EveStrategy::Kind::PccPlus:
      return apply_cloner(pcc_isometry(strategy.q(), Orientation::Plus),
                          input);
    case EveStrategy::Kind::PccMinus:
      return apply_cloner(pcc_isometry(strategy.q(), Orientation::Minus),
                          input);
    case EveStrategy::Kind::RandomMirrored: {
      const MatrixXc plus =
          apply_cloner(pcc_isometry(strategy.q(), Orientation::Plus), input)
              .entries();
      const MatrixXc minus =
          apply_cloner(pcc_isometry(strategy.q(), Orientation::Minus), input)
              .entries();
      return DensityMatrix(strategy.p_plus() * plus +
                           (1.0 - strategy.p_plus()) * minus);
    }
  }
  throw std::logic_error("unreachable strategy kind");
}

double bob_sigma_z_bias(const EveStrategy& strategy, double phi) {
  const DensityMatrix input = density(make_equatorial_state(phi));
  const DensityMatrix bob =
      partial_trace(strategy_output(strategy, input), Subsystem::Bob);
  return expectation(bob, PauliAxis::Z);
}

}  // namespace pcc
