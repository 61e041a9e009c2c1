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

// Command-line front end: one subcommand per experiment, emitting
// machine-readable CSV or JSON tables.

#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcc/sweep.hpp"
#include "pcc/version.hpp"

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct CommonOptions {
  std::vector<double> grid;
  long shots = 10000;
  int repeats = 20;
  std::uint64_t seed = 0;
  double visibility = 1.0;
  bool exact = false;
  std::string format = "csv";
  std::string out_path;
};

void add_common_flags(CLI::App* cmd, CommonOptions* opts, bool angle_grid) {
  cmd->add_option("--grid", opts->grid,
                  angle_grid ? "Grid points, in degrees (comma separated)"
                             : "Grid points (comma separated)")
      ->delimiter(',');
  cmd->add_option("--shots", opts->shots, "Shots per measurement setting")
      ->capture_default_str();
  cmd->add_option("--repeats", opts->repeats,
                  "Tomography repetitions per point")
      ->capture_default_str();
  cmd->add_option("--seed", opts->seed, "Random seed")->capture_default_str();
  cmd->add_option("--visibility", opts->visibility,
                  "Werner visibility of the entangled source")
      ->capture_default_str();
  cmd->add_flag("--exact", opts->exact,
                "Emit exact channel algebra instead of sampled estimates");
  cmd->add_option("--format", opts->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts->out_path,
                  "Output file path (stdout when omitted)");
}

pcc::SweepSpec make_spec(pcc::Experiment experiment,
                         const CommonOptions& opts, bool angle_grid) {
  pcc::SweepSpec spec;
  spec.experiment = experiment;
  if (opts.grid.empty()) {
    spec.grid = pcc::default_grid(experiment);
  } else {
    spec.grid = opts.grid;
    if (angle_grid) {
      for (double& v : spec.grid) v *= kDegToRad;
    }
  }
  if (!opts.exact) {
    spec.sampled = pcc::SampledMode{opts.shots, opts.repeats};
  }
  spec.seed = opts.seed;
  spec.source_visibility = opts.visibility;
  return spec;
}

void emit(const pcc::ResultTable& table, const CommonOptions& opts) {
  const pcc::TableFormat format =
      opts.format == "json" ? pcc::TableFormat::Json : pcc::TableFormat::Csv;
  if (opts.out_path.empty()) {
    pcc::emit_table(table, format, std::cout);
  } else {
    pcc::emit_table(table, format, opts.out_path);
  }
}

pcc::EveStrategy parse_strategy(const std::string& name, double q,
                                double p_plus) {
  if (name == "none") return pcc::EveStrategy::no_attack();
  const pcc::CloningParameter param{q};
  if (name == "plus") return pcc::EveStrategy::pcc_plus(param);
  if (name == "minus") return pcc::EveStrategy::pcc_minus(param);
  if (name == "mirrored") {
    return pcc::EveStrategy::random_mirrored(param, p_plus);
  }
  throw CLI::ValidationError("--strategy",
                             "must be one of none, plus, minus, mirrored");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Asymmetric phase-covariant cloning toolkit: exact channel algebra, "
      "Sagnac-loop optics, finite-shot tomography and BB84 eavesdropping "
      "experiments"};
  app.set_version_flag("--version", pcc::kVersion);
  app.require_subcommand(1);

  CommonOptions fid_q, fid_phase, fid_theta, bias, bb84, optics;
  double q_phase = 0.4;
  double q_theta = 0.5;
  std::string orientation_name = "plus";
  std::string strategy_name = "plus";
  double p_plus = 0.5;
  double strategy_q = 0.5;
  long n_signals = 100000;
  double z_fraction = 0.1;
  double alpha_deg = -1.0;
  std::string preset = "both";

  CLI::App* c1 = app.add_subcommand(
      "fidelity_vs_q", "Clone fidelities of |D> against the cloning "
                       "parameter q");
  add_common_flags(c1, &fid_q, false);
  c1->add_option("--orientation", orientation_name, "Cloning machine")
      ->check(CLI::IsMember({"plus", "minus"}))
      ->capture_default_str();

  CLI::App* c2 = app.add_subcommand(
      "fidelity_vs_phase",
      "Clone fidelities across the equator at fixed q");
  add_common_flags(c2, &fid_phase, true);
  c2->add_option("--q", q_phase, "Cloning parameter")->capture_default_str();

  CLI::App* c3 = app.add_subcommand(
      "fidelity_vs_theta",
      "Clone fidelities along a polar sweep for both machines");
  add_common_flags(c3, &fid_theta, true);
  c3->add_option("--q", q_theta, "Cloning parameter")->capture_default_str();

  CLI::App* c4 = app.add_subcommand(
      "bias_vs_q", "Bob's sigma_z bias under PCC(+) and under the balanced "
                   "random alternation");
  add_common_flags(c4, &bias, false);

  CLI::App* c5 = app.add_subcommand(
      "bb84", "BB84 exchange with an eavesdropping strategy on the line");
  add_common_flags(c5, &bb84, false);
  c5->add_option("--strategy", strategy_name,
                 "Eve's strategy: none, plus, minus, mirrored")
      ->capture_default_str();
  c5->add_option("--p-plus", p_plus,
                 "Plus-machine probability for the mirrored strategy")
      ->capture_default_str();
  c5->add_option("--signals", n_signals, "Signals per run")
      ->capture_default_str();
  c5->add_option("--z-fraction", z_fraction,
                 "Fraction of rounds Bob spends on the sigma_z check")
      ->capture_default_str();

  CLI::App* c6 = app.add_subcommand(
      "verify_optics",
      "Certify the compiled Sagnac presets against the ideal isometries");
  add_common_flags(c6, &optics, true);
  c6->add_option("--alpha-deg", alpha_deg,
                 "Single waveplate angle in degrees (overrides --grid)");
  c6->add_option("--preset", preset,
                 "Which preset to certify: sagnac-plus, sagnac-minus, both")
      ->check(CLI::IsMember({"sagnac-plus", "sagnac-minus", "both"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c1->parsed()) {
      pcc::SweepSpec spec = make_spec(pcc::Experiment::FidelityVsQ, fid_q,
                                      false);
      spec.orientation = orientation_name == "minus"
                             ? pcc::Orientation::Minus
                             : pcc::Orientation::Plus;
      emit(pcc::run_sweep(spec), fid_q);
    } else if (c2->parsed()) {
      pcc::SweepSpec spec =
          make_spec(pcc::Experiment::FidelityVsPhase, fid_phase, true);
      spec.q = q_phase;
      emit(pcc::run_sweep(spec), fid_phase);
    } else if (c3->parsed()) {
      pcc::SweepSpec spec =
          make_spec(pcc::Experiment::FidelityVsTheta, fid_theta, true);
      spec.q = q_theta;
      emit(pcc::run_sweep(spec), fid_theta);
    } else if (c4->parsed()) {
      emit(pcc::run_sweep(make_spec(pcc::Experiment::BiasVsQ, bias, false)),
           bias);
    } else if (c5->parsed()) {
      pcc::SweepSpec spec = make_spec(pcc::Experiment::Bb84, bb84, false);
      spec.strategy = parse_strategy(strategy_name, strategy_q, p_plus);
      spec.n_signals = n_signals;
      spec.z_check_fraction = z_fraction;
      emit(pcc::run_sweep(spec), bb84);
    } else if (c6->parsed()) {
      if (alpha_deg >= 0.0) {
        optics.grid = {alpha_deg};
      }
      pcc::SweepSpec spec =
          make_spec(pcc::Experiment::VerifyOptics, optics, true);
      pcc::ResultTable table = pcc::run_sweep(spec);
      if (preset != "both") {
        // Keep only the requested preset's columns.
        const bool keep_plus = preset == "sagnac-plus";
        std::vector<std::size_t> keep{0, 1};
        keep.push_back(keep_plus ? 2 : 4);
        keep.push_back(keep_plus ? 3 : 5);
        keep.push_back(6);
        pcc::ResultTable filtered;
        filtered.metadata = table.metadata;
        filtered.metadata.emplace_back("preset", preset);
        for (std::size_t c : keep) filtered.columns.push_back(table.columns[c]);
        for (const auto& row : table.rows) {
          std::vector<double> r;
          for (std::size_t c : keep) r.push_back(row[c]);
          filtered.rows.push_back(std::move(r));
        }
        table = std::move(filtered);
      }
      emit(table, optics);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
