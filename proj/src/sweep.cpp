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

#include "pcc/sweep.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "pcc/optics.hpp"
#include "pcc/protocol.hpp"
#include "pcc/rng.hpp"
#include "pcc/tomography.hpp"
#include "pcc/version.hpp"

namespace pcc {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_std(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double mean = mean_of(values);
  double sum = 0.0;
  for (double v : values) sum += (v - mean) * (v - mean);
  return std::sqrt(sum / static_cast<double>(values.size() - 1));
}

PureState conjugate(const PureState& psi) {
  return PureState(psi.amplitudes().conjugate());
}

// Bob's state after Alice steers him towards `target` through the Werner
// source: v |t><t| + (1 - v) I/2.
DensityMatrix prepared_state(double visibility, const PureState& target) {
  return remote_prepare(make_source(SourceModel{visibility}),
                        conjugate(target))
      .bob_state;
}

double fidelity_with_bloch(const PureState& target, const Vector3d& bloch) {
  const Vector3d r = bloch_vector(density(target)).coords();
  return 0.5 * (1.0 + r.dot(bloch));
}

struct Estimate {
  double mean;
  double std;
};

// Finite-shot fidelity of `state` against `target` via the tomography
// pipeline: mean and spread of the per-repeat reconstructed fidelities.
Estimate sampled_fidelity(const DensityMatrix& state, const PureState& target,
                          const SampledMode& mode, std::uint64_t seed) {
  const TomographyResult result =
      tomography_pipeline(state, mode.shots, mode.repeats, seed);
  std::vector<double> fids;
  fids.reserve(result.repeat_blochs.size());
  for (const Vector3d& b : result.repeat_blochs) {
    fids.push_back(fidelity_with_bloch(target, b));
  }
  return Estimate{mean_of(fids), sample_std(fids)};
}

Estimate sampled_sigma_z(const DensityMatrix& state, const SampledMode& mode,
                         std::uint64_t seed) {
  const TomographyResult result =
      tomography_pipeline(state, mode.shots, mode.repeats, seed);
  std::vector<double> zs;
  zs.reserve(result.repeat_blochs.size());
  for (const Vector3d& b : result.repeat_blochs) zs.push_back(b.z());
  return Estimate{mean_of(zs), sample_std(zs)};
}

EveStrategy strategy_with_q(const EveStrategy& strategy, double q) {
  switch (strategy.kind()) {
    case EveStrategy::Kind::NoAttack:
      return strategy;
    case EveStrategy::Kind::PccPlus:
      return EveStrategy::pcc_plus(CloningParameter(q));
    case EveStrategy::Kind::PccMinus:
      return EveStrategy::pcc_minus(CloningParameter(q));
    case EveStrategy::Kind::RandomMirrored:
      return EveStrategy::random_mirrored(CloningParameter(q),
                                          strategy.p_plus());
  }
  throw std::logic_error("unreachable strategy kind");
}

std::string strategy_name(const EveStrategy& strategy) {
  switch (strategy.kind()) {
    case EveStrategy::Kind::NoAttack:
      return "none";
    case EveStrategy::Kind::PccPlus:
      return "plus";
    case EveStrategy::Kind::PccMinus:
      return "minus";
    case EveStrategy::Kind::RandomMirrored:
      return "mirrored";
  }
  throw std::logic_error("unreachable strategy kind");
}

bool is_q_grid(Experiment experiment) {
  return experiment == Experiment::FidelityVsQ ||
         experiment == Experiment::BiasVsQ || experiment == Experiment::Bb84;
}

void validate_spec(const SweepSpec& spec) {
  if (spec.grid.empty()) {
    throw std::invalid_argument("sweep grid must not be empty");
  }
  for (double v : spec.grid) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("sweep grid values must be finite");
    }
    if (is_q_grid(spec.experiment) && (v < 0.0 || v > 1.0)) {
      throw std::invalid_argument(
          "cloning parameter grid values must lie in [0, 1]");
    }
  }
  if (!std::isfinite(spec.source_visibility) || spec.source_visibility < 0.0 ||
      spec.source_visibility > 1.0) {
    throw std::invalid_argument("source visibility must lie in [0, 1]");
  }
  if (spec.experiment == Experiment::FidelityVsPhase ||
      spec.experiment == Experiment::FidelityVsTheta) {
    static_cast<void>(CloningParameter(spec.q));  // range check
  }
  if (spec.sampled) {
    if (spec.sampled->shots < 1) {
      throw std::invalid_argument("shot count must be at least 1");
    }
    if (spec.sampled->repeats < 1) {
      throw std::invalid_argument("repeat count must be at least 1");
    }
  }
  if (spec.experiment == Experiment::Bb84) {
    if (spec.n_signals < 1) {
      throw std::invalid_argument("signal count must be at least 1");
    }
    if (!std::isfinite(spec.z_check_fraction) || spec.z_check_fraction < 0.0 ||
        spec.z_check_fraction > 1.0) {
      throw std::invalid_argument("z check fraction must lie in [0, 1]");
    }
  }
}

std::vector<std::pair<std::string, std::string>> build_metadata(
    const SweepSpec& spec) {
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("experiment", experiment_name(spec.experiment));
  meta.emplace_back("version", kVersion);
  meta.emplace_back("rng", kRngName);
  meta.emplace_back("seed", std::to_string(spec.seed));
  if (spec.sampled) {
    meta.emplace_back("mode", "sampled");
    meta.emplace_back("shots", std::to_string(spec.sampled->shots));
    meta.emplace_back("repeats", std::to_string(spec.sampled->repeats));
  } else {
    meta.emplace_back("mode", "exact");
  }
  meta.emplace_back("visibility", format_double(spec.source_visibility));
  switch (spec.experiment) {
    case Experiment::FidelityVsQ:
      meta.emplace_back("orientation",
                        spec.orientation == Orientation::Plus ? "plus"
                                                              : "minus");
      break;
    case Experiment::FidelityVsPhase:
      meta.emplace_back("q", format_double(spec.q));
      meta.emplace_back("orientation",
                        spec.orientation == Orientation::Plus ? "plus"
                                                              : "minus");
      break;
    case Experiment::FidelityVsTheta:
      meta.emplace_back("q", format_double(spec.q));
      break;
    case Experiment::BiasVsQ:
      break;
    case Experiment::Bb84:
      meta.emplace_back("strategy", strategy_name(spec.strategy));
      if (spec.strategy.kind() == EveStrategy::Kind::RandomMirrored) {
        meta.emplace_back("p_plus", format_double(spec.strategy.p_plus()));
      }
      meta.emplace_back("n_signals", std::to_string(spec.n_signals));
      meta.emplace_back("z_check_fraction",
                        format_double(spec.z_check_fraction));
      break;
    case Experiment::VerifyOptics:
      break;
  }
  const bool angle_grid = !is_q_grid(spec.experiment);
  meta.emplace_back("grid_unit", angle_grid ? "deg" : "dimensionless");
  std::string grid;
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    if (i > 0) grid += ",";
    grid += format_double(angle_grid ? spec.grid[i] * kRadToDeg
                                     : spec.grid[i]);
  }
  meta.emplace_back("grid", grid);
  return meta;
}

void run_fidelity_vs_q(const SweepSpec& spec, ResultTable& table) {
  const PureState target = make_equatorial_state(0.0);  // |D>
  if (spec.sampled) {
    table.columns = {"q", "F_B", "F_B_std", "F_E", "F_E_std"};
  } else {
    table.columns = {"q", "F_B", "F_E"};
  }
  const DensityMatrix prepared =
      prepared_state(spec.source_visibility, target);
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    const double q = spec.grid[i];
    const DensityMatrix joint = apply_cloner(
        pcc_isometry(CloningParameter(q), spec.orientation), prepared);
    const DensityMatrix bob = partial_trace(joint, Subsystem::Bob);
    const DensityMatrix eve = partial_trace(joint, Subsystem::Eve);
    if (spec.sampled) {
      const Estimate fb = sampled_fidelity(bob, target, *spec.sampled,
                                           derive_stream(spec.seed, i, 0));
      const Estimate fe = sampled_fidelity(eve, target, *spec.sampled,
                                           derive_stream(spec.seed, i, 1));
      table.rows.push_back({q, fb.mean, fb.std, fe.mean, fe.std});
    } else {
      table.rows.push_back(
          {q, fidelity_pure(target, bob), fidelity_pure(target, eve)});
    }
  }
}

void run_fidelity_vs_phase(const SweepSpec& spec, ResultTable& table) {
  if (spec.sampled) {
    table.columns = {"phi_deg", "F_B", "F_B_std", "F_E", "F_E_std"};
  } else {
    table.columns = {"phi_deg", "F_B", "F_E"};
  }
  const CloningIsometry iso =
      pcc_isometry(CloningParameter(spec.q), spec.orientation);
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    const double phi = spec.grid[i];
    const PureState target = make_equatorial_state(phi);
    const DensityMatrix prepared =
        prepared_state(spec.source_visibility, target);
    const DensityMatrix joint = apply_cloner(iso, prepared);
    const DensityMatrix bob = partial_trace(joint, Subsystem::Bob);
    const DensityMatrix eve = partial_trace(joint, Subsystem::Eve);
    if (spec.sampled) {
      const Estimate fb = sampled_fidelity(bob, target, *spec.sampled,
                                           derive_stream(spec.seed, i, 0));
      const Estimate fe = sampled_fidelity(eve, target, *spec.sampled,
                                           derive_stream(spec.seed, i, 1));
      table.rows.push_back(
          {phi * kRadToDeg, fb.mean, fb.std, fe.mean, fe.std});
    } else {
      table.rows.push_back({phi * kRadToDeg, fidelity_pure(target, bob),
                            fidelity_pure(target, eve)});
    }
  }
}

void run_fidelity_vs_theta(const SweepSpec& spec, ResultTable& table) {
  if (spec.sampled) {
    table.columns = {"theta_deg",  "F_B_plus",  "F_B_plus_std",
                     "F_E_plus",   "F_E_plus_std", "F_B_minus",
                     "F_B_minus_std", "F_E_minus", "F_E_minus_std"};
  } else {
    table.columns = {"theta_deg", "F_B_plus", "F_E_plus", "F_B_minus",
                     "F_E_minus"};
  }
  const CloningIsometry plus =
      pcc_isometry(CloningParameter(spec.q), Orientation::Plus);
  const CloningIsometry minus =
      pcc_isometry(CloningParameter(spec.q), Orientation::Minus);
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    const double theta = spec.grid[i];
    const PureState target = make_polar_state(theta);
    const DensityMatrix prepared =
        prepared_state(spec.source_visibility, target);
    std::vector<double> row{theta * kRadToDeg};
    int slot = 0;
    for (const CloningIsometry* iso : {&plus, &minus}) {
      const DensityMatrix joint = apply_cloner(*iso, prepared);
      for (Subsystem clone : {Subsystem::Bob, Subsystem::Eve}) {
        const DensityMatrix marginal = partial_trace(joint, clone);
        if (spec.sampled) {
          const Estimate est =
              sampled_fidelity(marginal, target, *spec.sampled,
                               derive_stream(spec.seed, i, slot));
          row.push_back(est.mean);
          row.push_back(est.std);
        } else {
          row.push_back(fidelity_pure(target, marginal));
        }
        ++slot;
      }
    }
    table.rows.push_back(std::move(row));
  }
}

void run_bias_vs_q(const SweepSpec& spec, ResultTable& table) {
  if (spec.sampled) {
    table.columns = {"q", "bias_plus", "bias_plus_std", "bias_mirrored",
                     "bias_mirrored_std"};
  } else {
    table.columns = {"q", "bias_plus", "bias_mirrored"};
  }
  const PureState target = make_equatorial_state(0.0);
  const DensityMatrix prepared =
      prepared_state(spec.source_visibility, target);
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    const double q = spec.grid[i];
    const EveStrategy strategies[2] = {
        EveStrategy::pcc_plus(CloningParameter(q)),
        EveStrategy::random_mirrored(CloningParameter(q), 0.5)};
    std::vector<double> row{q};
    for (int s = 0; s < 2; ++s) {
      const DensityMatrix bob = partial_trace(
          strategy_output(strategies[s], prepared), Subsystem::Bob);
      if (spec.sampled) {
        const Estimate est = sampled_sigma_z(bob, *spec.sampled,
                                             derive_stream(spec.seed, i, s));
        row.push_back(est.mean);
        row.push_back(est.std);
      } else {
        row.push_back(expectation(bob, PauliAxis::Z));
      }
    }
    table.rows.push_back(std::move(row));
  }
}

void run_bb84_sweep(const SweepSpec& spec, ResultTable& table) {
  table.columns = {"q",      "qber_x", "qber_y",       "sigma_z_bias",
                   "bias_std_error", "f_bob",  "f_eve", "eve_detected"};
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    const double q = spec.grid[i];
    const EveStrategy strategy = strategy_with_q(spec.strategy, q);
    if (spec.sampled) {
      Bb84Config config;
      config.n_signals = spec.n_signals;
      config.strategy = strategy;
      config.z_check_fraction = spec.z_check_fraction;
      config.seed = derive_stream(spec.seed, i);
      config.source.werner_visibility = spec.source_visibility;
      const Bb84Report report = run_bb84(config);
      table.rows.push_back(
          {q, report.qber_x, report.qber_y, report.sigma_z_bias,
           report.bias_std_error, report.f_bob, report.f_eve,
           report.verdict == BiasVerdict::EveDetected ? 1.0 : 0.0});
    } else {
      // Channel-exact observables: no sampling, zero standard error.
      const PureState target = make_equatorial_state(0.0);
      const DensityMatrix prepared =
          prepared_state(spec.source_visibility, target);
      const DensityMatrix joint = strategy_output(strategy, prepared);
      const DensityMatrix bob = partial_trace(joint, Subsystem::Bob);
      const double f_bob = fidelity_pure(target, bob);
      const double f_eve =
          fidelity_pure(target, partial_trace(joint, Subsystem::Eve));
      const double bias = expectation(bob, PauliAxis::Z);
      table.rows.push_back({q, 1.0 - f_bob, 1.0 - f_bob, bias, 0.0, f_bob,
                            f_eve,
                            std::abs(bias) > kAnalyticTol ? 1.0 : 0.0});
    }
  }
}

void run_verify_optics(const SweepSpec& spec, ResultTable& table) {
  table.columns = {"alpha_deg",     "q",        "plus_ok",
                   "plus_residual", "minus_ok", "minus_residual",
                   "marginal_max_dev"};
  const PureState probes[4] = {
      make_equatorial_state(0.0), make_equatorial_state(std::numbers::pi / 2),
      basis_state(0), make_polar_state(0.3)};
  for (double alpha : spec.grid) {
    const CloningParameter q = waveplate_to_q(alpha);
    double residuals[2];
    bool ok[2];
    double marginal_dev = 0.0;
    int v = 0;
    for (Orientation variant : {Orientation::Plus, Orientation::Minus}) {
      const Matrix4c u = compile_circuit(sagnac_preset(alpha, variant));
      const CloningIsometry iso = pcc_isometry(q, variant);
      const PhaseFit fit = equivalent_up_to_local_phase(u, iso);
      ok[v] = fit.equivalent;
      residuals[v] = fit.residual;
      const Matrix4c corrected = apply_phase_correction(fit, u);
      for (const PureState& probe : probes) {
        const DensityMatrix from_circuit = circuit_output(corrected, probe);
        const DensityMatrix ideal = apply_cloner(iso, probe);
        for (Subsystem side : {Subsystem::Bob, Subsystem::Eve}) {
          const double dev = (partial_trace(from_circuit, side).entries() -
                              partial_trace(ideal, side).entries())
                                 .cwiseAbs()
                                 .maxCoeff();
          marginal_dev = std::max(marginal_dev, dev);
        }
      }
      ++v;
    }
    table.rows.push_back({alpha * kRadToDeg, q.value(), ok[0] ? 1.0 : 0.0,
                          residuals[0], ok[1] ? 1.0 : 0.0, residuals[1],
                          marginal_dev});
  }
}

}  // namespace

const char* experiment_name(Experiment experiment) {
  switch (experiment) {
    case Experiment::FidelityVsQ:
      return "fidelity_vs_q";
    case Experiment::FidelityVsPhase:
      return "fidelity_vs_phase";
    case Experiment::FidelityVsTheta:
      return "fidelity_vs_theta";
    case Experiment::BiasVsQ:
      return "bias_vs_q";
    case Experiment::Bb84:
      return "bb84";
    case Experiment::VerifyOptics:
      return "verify_optics";
  }
  throw std::logic_error("unreachable experiment");
}

std::vector<double> default_grid(Experiment experiment) {
  std::vector<double> grid;
  switch (experiment) {
    case Experiment::FidelityVsQ:
    case Experiment::BiasVsQ:
    case Experiment::Bb84:
      for (int i = 0; i <= 10; ++i) grid.push_back(0.1 * i);
      break;
    case Experiment::FidelityVsPhase:
      for (int i = 0; i < 13; ++i) {
        grid.push_back(2.0 * std::numbers::pi * i / 12.0);
      }
      break;
    case Experiment::FidelityVsTheta:
      for (int i = 0; i < 13; ++i) {
        grid.push_back(std::numbers::pi / 4.0 * i / 12.0);
      }
      break;
    case Experiment::VerifyOptics:
      for (double deg : {0.0, 9.0, 18.0, 22.5, 27.0, 36.0, 45.0}) {
        grid.push_back(deg / kRadToDeg);
      }
      break;
  }
  return grid;
}

ResultTable run_sweep(const SweepSpec& spec) {
  validate_spec(spec);
  ResultTable table;
  table.metadata = build_metadata(spec);
  switch (spec.experiment) {
    case Experiment::FidelityVsQ:
      run_fidelity_vs_q(spec, table);
      break;
    case Experiment::FidelityVsPhase:
      run_fidelity_vs_phase(spec, table);
      break;
    case Experiment::FidelityVsTheta:
      run_fidelity_vs_theta(spec, table);
      break;
    case Experiment::BiasVsQ:
      run_bias_vs_q(spec, table);
      break;
    case Experiment::Bb84:
      run_bb84_sweep(spec, table);
      break;
    case Experiment::VerifyOptics:
      run_verify_optics(spec, table);
      break;
  }
  return table;
}

void emit_table(const ResultTable& table, TableFormat format,
                std::ostream& out) {
  if (format == TableFormat::Csv) {
    for (const auto& [key, value] : table.metadata) {
      out << "# " << key << " = " << value << "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c > 0) out << ",";
      out << table.columns[c];
    }
    out << "\n";
    for (const std::vector<double>& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) out << ",";
        out << format_double(row[c]);
      }
      out << "\n";
    }
  } else {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta;
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    j["metadata"] = meta;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const std::vector<double>& row : table.rows) {
      nlohmann::ordered_json entry;
      for (std::size_t c = 0; c < row.size(); ++c) {
        entry[table.columns[c]] = row[c];
      }
      rows.push_back(entry);
    }
    j["rows"] = rows;
    out << j.dump(2) << "\n";
  }
}

void emit_table(const ResultTable& table, TableFormat format,
                const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path +
                             "' for writing: " + std::strerror(errno));
  }
  emit_table(table, format, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed while writing '" + path +
                             "': " + std::strerror(errno));
  }
}

}  // namespace pcc
