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

#include "pcc/protocol.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pcc/rng.hpp"

namespace pcc {

namespace {

constexpr double kMinProjectionProbability = 1e-12;

// The four equatorial BB84 signal states: phase, key basis and key bit.
struct SignalCase {
  double phi;
  PauliAxis basis;
  int bit;
};

constexpr std::array<SignalCase, 4> kSignalCases = {{
    {0.0, PauliAxis::X, 0},
    {std::numbers::pi, PauliAxis::X, 1},
    {std::numbers::pi / 2.0, PauliAxis::Y, 0},
    {3.0 * std::numbers::pi / 2.0, PauliAxis::Y, 1},
}};

Vector3d bloch_of(const DensityMatrix& rho) {
  return bloch_vector(rho).coords();
}

}  // namespace

DensityMatrix make_source(const SourceModel& model) {
  const double v = model.werner_visibility;
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw std::invalid_argument("source visibility must lie in [0, 1]");
  }
  Vector4c bell = Vector4c::Zero();
  bell(0) = 1.0 / std::sqrt(2.0);
  bell(3) = 1.0 / std::sqrt(2.0);
  const Matrix4c rho =
      v * (bell * bell.adjoint()) + (1.0 - v) * 0.25 * Matrix4c::Identity();
  return DensityMatrix(rho);
}

RemotePreparation remote_prepare(const DensityMatrix& source,
                                 const PureState& alice_state) {
  if (source.n_qubits() != 2 || alice_state.n_qubits() != 1) {
    throw std::invalid_argument(
        "remote preparation expects a two-qubit source and a one-qubit "
        "projection");
  }
  const MatrixXc& rho = source.entries();
  const VectorXc& a = alice_state.amplitudes();
  // Source ordering is (Alice, Bob): joint index 2*alice + bob.
  Matrix2c bob = Matrix2c::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          bob(i, j) += std::conj(a(k)) * a(l) * rho(2 * k + i, 2 * l + j);
        }
      }
    }
  }
  const double probability = bob.trace().real();
  if (probability < kMinProjectionProbability) {
    throw std::invalid_argument(
        "projection probability vanishes; the outcome is impossible");
  }
  return RemotePreparation{DensityMatrix(bob / probability), probability};
}

Bb84Report run_bb84(const Bb84Config& config) {
  if (config.n_signals < 1) {
    throw std::invalid_argument("signal count must be at least 1");
  }
  if (!std::isfinite(config.z_check_fraction) ||
      config.z_check_fraction < 0.0 || config.z_check_fraction > 1.0) {
    throw std::invalid_argument("z check fraction must lie in [0, 1]");
  }
  const DensityMatrix source = make_source(config.source);

  // Everything Bob can see per signal case is one of at most three channel
  // outputs; precompute their Bloch vectors once.
  std::array<Vector3d, 4> no_attack{};
  std::array<Vector3d, 4> plus{};
  std::array<Vector3d, 4> minus{};
  const bool needs_plus =
      config.strategy.kind() == EveStrategy::Kind::PccPlus ||
      config.strategy.kind() == EveStrategy::Kind::RandomMirrored;
  const bool needs_minus =
      config.strategy.kind() == EveStrategy::Kind::PccMinus ||
      config.strategy.kind() == EveStrategy::Kind::RandomMirrored;
  for (int c = 0; c < 4; ++c) {
    // Alice projects the conjugate state so that Bob is prepared in the
    // intended signal state.
    const PureState projection = make_equatorial_state(-kSignalCases[c].phi);
    const DensityMatrix prepared =
        remote_prepare(source, projection).bob_state;
    no_attack[c] = bloch_of(prepared);
    if (needs_plus) {
      plus[c] = bloch_of(partial_trace(
          apply_cloner(pcc_isometry(config.strategy.q(), Orientation::Plus),
                       prepared),
          Subsystem::Bob));
    }
    if (needs_minus) {
      minus[c] = bloch_of(partial_trace(
          apply_cloner(pcc_isometry(config.strategy.q(), Orientation::Minus),
                       prepared),
          Subsystem::Bob));
    }
  }

  long sifted[2] = {0, 0};
  long errors[2] = {0, 0};
  long z_rounds = 0;
  long z_plus = 0;
  const double f = config.z_check_fraction;
  for (long i = 0; i < config.n_signals; ++i) {
    SplitMix64 rng(derive_stream(config.seed, static_cast<std::uint64_t>(i)));
    const bool basis_y = rng.uniform() < 0.5;
    const bool bit_one = rng.uniform() < 0.5;
    const int c = (basis_y ? 2 : 0) + (bit_one ? 1 : 0);
    const bool use_plus = rng.uniform() < config.strategy.p_plus();
    const bool z_check = rng.uniform() < f;
    const PauliAxis bob_basis =
        z_check ? PauliAxis::Z
                : (rng.uniform() < 0.5 ? PauliAxis::X : PauliAxis::Y);

    const Vector3d* bloch = &no_attack[c];
    switch (config.strategy.kind()) {
      case EveStrategy::Kind::NoAttack:
        break;
      case EveStrategy::Kind::PccPlus:
        bloch = &plus[c];
        break;
      case EveStrategy::Kind::PccMinus:
        bloch = &minus[c];
        break;
      case EveStrategy::Kind::RandomMirrored:
        bloch = use_plus ? &plus[c] : &minus[c];
        break;
    }
    const double p_plus_outcome =
        0.5 * (1.0 + (*bloch)(static_cast<int>(bob_basis)));
    const bool outcome_plus = rng.uniform() < p_plus_outcome;

    if (z_check) {
      ++z_rounds;
      if (outcome_plus) ++z_plus;
    } else if (bob_basis == kSignalCases[c].basis) {
      const int k = bob_basis == PauliAxis::X ? 0 : 1;
      ++sifted[k];
      if ((outcome_plus ? 0 : 1) != kSignalCases[c].bit) ++errors[k];
    }
  }

  Bb84Report report;
  report.sifted_x = sifted[0];
  report.sifted_y = sifted[1];
  report.qber_x =
      sifted[0] > 0 ? static_cast<double>(errors[0]) / sifted[0] : 0.0;
  report.qber_y =
      sifted[1] > 0 ? static_cast<double>(errors[1]) / sifted[1] : 0.0;
  report.z_check_rounds = z_rounds;
  if (z_rounds > 0) {
    report.sigma_z_bias =
        static_cast<double>(2 * z_plus - z_rounds) / z_rounds;
    report.bias_std_error = std::sqrt(
        std::max(0.0, 1.0 - report.sigma_z_bias * report.sigma_z_bias) /
        z_rounds);
  }

  // Exact marginal fidelities via the ensemble-average channel, evaluated
  // at the sigma_x eigenstate target. Bob's value holds across the whole
  // equator; Eve's clone under the Minus machine tracks the conjugated
  // phase, and at this target the literal and corrected values coincide.
  const PureState target = make_equatorial_state(0.0);
  const DensityMatrix prepared =
      remote_prepare(source, make_equatorial_state(0.0)).bob_state;
  const DensityMatrix joint = strategy_output(config.strategy, prepared);
  report.f_bob = fidelity_pure(target, partial_trace(joint, Subsystem::Bob));
  report.f_eve = fidelity_pure(target, partial_trace(joint, Subsystem::Eve));

  report.verdict = z_rounds > 0 ? detect_bias(report) : BiasVerdict::Clean;
  return report;
}

BiasVerdict detect_bias(const Bb84Report& report, double z_threshold) {
  if (!std::isfinite(z_threshold) || z_threshold <= 0.0) {
    throw std::invalid_argument("detection threshold must be positive");
  }
  if (report.z_check_rounds < 1) {
    throw std::invalid_argument("report carries no sigma_z check rounds");
  }
  return std::abs(report.sigma_z_bias) >
                 z_threshold * report.bias_std_error
             ? BiasVerdict::EveDetected
             : BiasVerdict::Clean;
}

}  // namespace pcc
