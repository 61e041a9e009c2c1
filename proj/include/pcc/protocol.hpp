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

#include "pcc/cloning.hpp"
#include "pcc/qstate.hpp"

namespace pcc {

// Entangled pair shared by Alice and Bob, modeled as a Werner mixture of the
// fixed |Phi+> = (|00> + |11>)/sqrt(2) pair with white noise. Visibility 1 is
// the ideal source.
struct SourceModel {
  double werner_visibility = 1.0;
};

struct Bb84Config {
  long n_signals = 100000;
  EveStrategy strategy = EveStrategy::no_attack();
  // Fraction of rounds Bob devotes to the sigma_z check instead of a key
  // basis; the remaining rounds pick X or Y uniformly.
  double z_check_fraction = 0.1;
  std::uint64_t seed = 0;
  SourceModel source;
};

enum class BiasVerdict { Clean, EveDetected };

struct Bb84Report {
  double qber_x = 0.0;
  double qber_y = 0.0;
  double sigma_z_bias = 0.0;
  double bias_std_error = 0.0;
  long z_check_rounds = 0;
  long sifted_x = 0;
  long sifted_y = 0;
  // Exact (non-sampled) clone fidelities for the configured strategy and
  // source, against the equatorial target states.
  double f_bob = 1.0;
  double f_eve = 0.5;
  BiasVerdict verdict = BiasVerdict::Clean;
};

// v |Phi+><Phi+| + (1 - v) I/4, ordered (Alice, Bob).
DensityMatrix make_source(const SourceModel& model);

struct RemotePreparation {
  DensityMatrix bob_state;
  double probability;
};

// Alice projects her half of the pair onto |a>; Bob's conditional state is
// Tr_A[(|a><a| (x) I) rho] / p. For the ideal |Phi+> source Bob receives the
// complex conjugate of |a> in the H/V basis, so real projections prepare
// themselves. Throws when the projection probability is below 1e-12.
RemotePreparation remote_prepare(const DensityMatrix& source,
                                 const PureState& alice_state);

// Runs the equatorial BB84 exchange (X and Y bases) with Eve's strategy on
// the line and Bob's sigma_z spot check. QBER is computed on sifted
// matching-basis rounds; the bias estimate and its standard error come from
// the check rounds. Deterministic under the config seed; signal rounds use
// independent substreams and may be evaluated in any order.
Bb84Report run_bb84(const Bb84Config& config);

// EveDetected when |sigma_z_bias| exceeds z_threshold standard errors.
BiasVerdict detect_bias(const Bb84Report& report, double z_threshold = 5.0);

}  // namespace pcc
