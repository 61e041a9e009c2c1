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
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcc/cloning.hpp"

namespace pcc {

// Named experiments: the standard sweeps plus the optics certification.
enum class Experiment {
  FidelityVsQ,
  FidelityVsPhase,
  FidelityVsTheta,
  BiasVsQ,
  Bb84,
  VerifyOptics,
};

struct SampledMode {
  long shots = 10000;
  int repeats = 20;
};

// Full description of a sweep run. Angle grids (phase, theta, alpha) are in
// radians here; the CLI accepts degrees and converts.
struct SweepSpec {
  Experiment experiment = Experiment::FidelityVsQ;
  std::vector<double> grid;
  // Absent means exact channel algebra; present means finite-shot
  // simulation with the stated budget.
  std::optional<SampledMode> sampled;
  std::uint64_t seed = 0;
  double source_visibility = 1.0;
  // Fixed cloning parameter for the phase and theta sweeps.
  double q = 0.5;
  // Machine orientation for the fidelity sweeps.
  Orientation orientation = Orientation::Plus;
  // Eavesdropping strategy for the bb84 experiment; its q is replaced by
  // each grid value.
  EveStrategy strategy = EveStrategy::pcc_plus(CloningParameter(0.5));
  long n_signals = 100000;
  double z_check_fraction = 0.1;
};

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

enum class TableFormat { Csv, Json };

const char* experiment_name(Experiment experiment);

// Standard grids: q in 0..1 step 0.1, phases 0..2pi in 13 points, theta
// 0..pi/4 in 13 points, alpha {0, 9, 18, 22.5, 27, 36, 45} degrees
// (returned in radians).
std::vector<double> default_grid(Experiment experiment);

// Runs one experiment over its grid. The entire grid is validated before
// any computation; identical specs produce identical tables.
ResultTable run_sweep(const SweepSpec& spec);

// CSV: '#'-prefixed metadata lines, a header row, then one line per row with
// full round-trip precision. JSON: one object with "metadata" and "rows".
// Both are byte-stable for identical tables.
void emit_table(const ResultTable& table, TableFormat format,
                std::ostream& out);

// Writes to a file path; failures are reported with the path and cause.
void emit_table(const ResultTable& table, TableFormat format,
                const std::string& path);

}  // namespace pcc
