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

#include "pcc/protocol.hpp"
#include "test_helpers.hpp"

using namespace pcc;
using namespace pcc::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("werner source construction") {
  const DensityMatrix ideal = make_source(SourceModel{1.0});
  CHECK(std::abs(purity(ideal) - 1.0) < 1e-12);
  CHECK(std::abs(ideal.entries()(0, 3).real() - 0.5) < 1e-12);

  const DensityMatrix white = make_source(SourceModel{0.0});
  CHECK((white.entries() - 0.25 * Matrix4c::Identity()).cwiseAbs().maxCoeff() <
        1e-15);

  CHECK_THROWS_AS(make_source(SourceModel{1.2}), std::invalid_argument);
  CHECK_THROWS_AS(make_source(SourceModel{-0.1}), std::invalid_argument);
}

TEST_CASE("remote preparation through the ideal pair") {
  const DensityMatrix source = make_source(SourceModel{1.0});
  const PureState d = make_equatorial_state(0.0);

  const RemotePreparation prep_d = remote_prepare(source, d);
  CHECK(std::abs(prep_d.probability - 0.5) < 1e-12);
  CHECK((prep_d.bob_state.entries() - density(d).entries())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  const RemotePreparation prep_0 = remote_prepare(source, basis_state(0));
  CHECK(std::abs(prep_0.probability - 0.5) < 1e-12);
  CHECK((prep_0.bob_state.entries() - density(basis_state(0)).entries())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  // Projecting (|0> + i|1>)/sqrt(2) prepares the conjugate
  // (|0> - i|1>)/sqrt(2). Oracle: explicit 4x4 projection.
  const PureState r = make_equatorial_state(kPi / 2.0);
  const RemotePreparation prep_r = remote_prepare(source, r);
  Matrix2c oracle = Matrix2c::Zero();
  const Vector2c a = r.amplitudes().head<2>();
  const MatrixXc& rho = source.entries();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          oracle(i, j) += std::conj(a(k)) * a(l) * rho(2 * k + i, 2 * l + j);
        }
      }
    }
  }
  oracle /= oracle.trace().real();
  CHECK((prep_r.bob_state.entries() - oracle).cwiseAbs().maxCoeff() < 1e-12);
  const PureState l_state = make_equatorial_state(-kPi / 2.0);
  CHECK((prep_r.bob_state.entries() - density(l_state).entries())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  // Noisy source: fidelity of the steered state is (1 + v)/2.
  const RemotePreparation noisy =
      remote_prepare(make_source(SourceModel{0.95}), d);
  CHECK(std::abs(fidelity_pure(d, noisy.bob_state) - 0.975) < 1e-12);

  // Impossible projections are reported.
  const DensityMatrix zz =
      tensor_product(density(basis_state(0)), density(basis_state(0)));
  CHECK_THROWS_AS(remote_prepare(zz, basis_state(1)), std::invalid_argument);
}

TEST_CASE("masking theorem at the observable level") {
  // The balanced alternation has zero bias and the single-machine Bob
  // fidelity for every q, exactly.
  const PureState d = make_equatorial_state(0.0);
  for (int i = 0; i <= 10; ++i) {
    const CloningParameter q{i / 10.0};
    const EveStrategy masked = EveStrategy::random_mirrored(q, 0.5);
    const DensityMatrix joint = strategy_output(masked, density(d));
    const DensityMatrix bob = partial_trace(joint, Subsystem::Bob);
    CHECK(std::abs(expectation(bob, PauliAxis::Z)) < 1e-12);
    CHECK(std::abs(fidelity_pure(d, bob) -
                   0.5 * (1.0 + std::sqrt(1.0 - q.value()))) < 1e-12);
    // No free lunch: Eve's fidelity equals the single-machine value.
    const DensityMatrix eve = partial_trace(joint, Subsystem::Eve);
    CHECK(std::abs(fidelity_pure(d, eve) -
                   0.5 * (1.0 + std::sqrt(q.value()))) < 1e-12);
  }
}

TEST_CASE("clean run has no errors") {
  Bb84Config config;
  config.n_signals = 20000;
  config.strategy = EveStrategy::no_attack();
  config.seed = 5;
  const Bb84Report report = run_bb84(config);
  CHECK(report.qber_x == 0.0);
  CHECK(report.qber_y == 0.0);
  CHECK(report.f_bob == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(report.f_eve - 0.5) < 1e-12);
  CHECK(report.verdict == BiasVerdict::Clean);
  CHECK(std::abs(report.sigma_z_bias) < 5.0 * report.bias_std_error);
}

TEST_CASE("symmetric attack leaves the known footprint") {
  Bb84Config config;
  config.n_signals = 100000;
  config.strategy = EveStrategy::pcc_plus(CloningParameter{0.5});
  config.seed = 11;
  const Bb84Report report = run_bb84(config);

  const double expected_qber = 1.0 - 0.8535533905932737;
  const double se_x = std::sqrt(expected_qber * (1.0 - expected_qber) /
                                report.sifted_x);
  const double se_y = std::sqrt(expected_qber * (1.0 - expected_qber) /
                                report.sifted_y);
  CHECK(std::abs(report.qber_x - expected_qber) < 3.0 * se_x);
  CHECK(std::abs(report.qber_y - expected_qber) < 3.0 * se_y);
  CHECK(std::abs(report.f_bob - 0.8535533905932737) < 1e-12);
  CHECK(std::abs(report.f_eve - 0.8535533905932737) < 1e-12);
  CHECK(std::abs(report.sigma_z_bias - 0.5) < 5.0 * report.bias_std_error);
  CHECK(report.verdict == BiasVerdict::EveDetected);

  // Determinism under the seed.
  const Bb84Report again = run_bb84(config);
  CHECK(report.qber_x == again.qber_x);
  CHECK(report.sigma_z_bias == again.sigma_z_bias);
  CHECK(report.z_check_rounds == again.z_check_rounds);
}

TEST_CASE("random alternation masks the attack") {
  Bb84Config config;
  config.n_signals = 100000;
  config.strategy = EveStrategy::random_mirrored(CloningParameter{0.5}, 0.5);
  config.seed = 13;
  const Bb84Report report = run_bb84(config);
  CHECK(report.verdict == BiasVerdict::Clean);
  CHECK(std::abs(report.sigma_z_bias) < 5.0 * report.bias_std_error);
  CHECK(std::abs(report.f_bob - 0.8535533905932737) < 1e-12);
  // QBER is unchanged relative to the single machine.
  const double expected_qber = 1.0 - 0.8535533905932737;
  const double se = std::sqrt(expected_qber * (1.0 - expected_qber) /
                              report.sifted_x);
  CHECK(std::abs(report.qber_x - expected_qber) < 4.0 * se);
}

TEST_CASE("qber converges to one minus the Bob fidelity") {
  // At n = 1e5 the empirical QBER of both bases sits within 3 binomial
  // standard errors of 1 - F_B in at least 99 of 100 seeded runs.
  const double expected = 1.0 - 0.8535533905932737;
  int within = 0;
  for (int seed = 0; seed < 100; ++seed) {
    Bb84Config config;
    config.n_signals = 100000;
    config.strategy = EveStrategy::pcc_plus(CloningParameter{0.5});
    config.seed = static_cast<std::uint64_t>(seed);
    const Bb84Report report = run_bb84(config);
    const double se_x =
        std::sqrt(expected * (1.0 - expected) / report.sifted_x);
    const double se_y =
        std::sqrt(expected * (1.0 - expected) / report.sifted_y);
    if (std::abs(report.qber_x - expected) < 3.0 * se_x &&
        std::abs(report.qber_y - expected) < 3.0 * se_y) {
      ++within;
    }
  }
  CHECK(within >= 99);
}

TEST_CASE("basis symmetry of the error rate") {
  for (auto strategy :
       {EveStrategy::pcc_plus(CloningParameter{0.3}),
        EveStrategy::pcc_minus(CloningParameter{0.6}),
        EveStrategy::random_mirrored(CloningParameter{0.5}, 0.5)}) {
    Bb84Config config;
    config.n_signals = 200000;
    config.strategy = strategy;
    config.seed = 21;
    const Bb84Report report = run_bb84(config);
    const double pooled =
        0.5 * (report.qber_x + report.qber_y);
    const double se = std::sqrt(pooled * (1.0 - pooled) *
                                (1.0 / report.sifted_x + 1.0 / report.sifted_y));
    CHECK(std::abs(report.qber_x - report.qber_y) < 4.0 * se);
  }
}

TEST_CASE("bias detection rule") {
  Bb84Config config;
  config.n_signals = 10000;
  config.z_check_fraction = 1.0;
  config.strategy = EveStrategy::pcc_plus(CloningParameter{0.5});
  config.seed = 31;
  const Bb84Report attacked = run_bb84(config);
  CHECK(attacked.z_check_rounds == 10000);
  CHECK(detect_bias(attacked) == BiasVerdict::EveDetected);
  // A huge threshold turns the same report clean.
  CHECK(detect_bias(attacked, 1000.0) == BiasVerdict::Clean);

  config.strategy = EveStrategy::no_attack();
  const Bb84Report clean = run_bb84(config);
  CHECK(detect_bias(clean) == BiasVerdict::Clean);

  Bb84Report empty;
  CHECK_THROWS_AS(detect_bias(empty), std::invalid_argument);
  CHECK_THROWS_AS(detect_bias(attacked, -1.0), std::invalid_argument);

  Bb84Config bad = config;
  bad.n_signals = 0;
  CHECK_THROWS_AS(run_bb84(bad), std::invalid_argument);
  bad = config;
  bad.z_check_fraction = 1.5;
  CHECK_THROWS_AS(run_bb84(bad), std::invalid_argument);
}
