// Copyright 2026 The teur Authors
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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "teur/ensembles.hpp"
#include "teur/expcli.hpp"

namespace teur {

SweepConfig preset_config(const std::string& name) {
  SweepConfig c;
  c.num_rotations = 6;
  c.generator.preset = GeneratorSpec::Preset::kPauliX;
  c.theta_steps = 50;
  if (name == "fig3a") {
    // Pure product state, B1 trivial.
    c.game = GameKind::kTripartite;
    c.dims = {2, 1, 2};
    c.noise_eps = 0.0;
  } else if (name == "fig3b") {
    // Noise on the whole state: mixed, not product.
    c.game = GameKind::kTripartite;
    c.dims = {2, 1, 2};
    c.noise_eps = 0.1;
    c.noise_placement = NoisePlacement::kAfter;
  } else if (name == "fig4") {
    c.game = GameKind::kTripartite;
    c.dims = {2, 2, 2};
    c.noise_eps = 0.1;
    c.noise_placement = NoisePlacement::kAfter;
  } else if (name == "fig5") {
    c.game = GameKind::kBipartite;
    c.dims = {2, 2};
    c.noise_eps = 0.1;
    c.noise_placement = NoisePlacement::kAfter;
  } else {
    throw ConfigError("preset", "unknown preset '" + name + "'");
  }
  return c;
}

std::vector<std::string> preset_names() { return {"fig3a", "fig3b", "fig4", "fig5"}; }

void validate(const SweepConfig& c) {
  const std::size_t want = c.game == GameKind::kTripartite ? 3 : 2;
  if (c.dims.size() != want) {
    throw ConfigError("dims", "expected " + std::to_string(want) + " dimensions for this game");
  }
  for (Index d : c.dims) {
    if (d < 1) throw ConfigError("dims", "dimensions must be >= 1");
  }
  if (c.dims[0] < 2) throw ConfigError("dims", "subsystem A needs dimension >= 2");
  if (c.num_rotations < 1) throw ConfigError("num-rotations", "must be >= 1");
  if (!c.angles.empty() && static_cast<int>(c.angles.size()) != c.num_rotations) {
    throw ConfigError("angles", "number of angles differs from num-rotations");
  }
  if (!c.probabilities.empty()) {
    if (static_cast<int>(c.probabilities.size()) != c.num_rotations) {
      throw ConfigError("dist", "number of probabilities differs from num-rotations");
    }
    double total = 0.0;
    for (double p : c.probabilities) {
      if (!(p >= 0.0)) throw ConfigError("dist", "probabilities must be nonnegative");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ConfigError("dist", "probabilities must sum to 1");
  }
  if (c.generator.preset != GeneratorSpec::Preset::kExplicit && c.dims[0] != 2) {
    throw ConfigError("generator", "Pauli presets need |A| = 2");
  }
  if (c.generator.preset == GeneratorSpec::Preset::kExplicit &&
      (c.generator.matrix.rows() != c.dims[0] || c.generator.matrix.cols() != c.dims[0])) {
    throw ConfigError("generator", "explicit generator must be |A| x |A|");
  }
  if (c.theta_steps < 1) throw ConfigError("theta-steps", "grid count must be >= 1");
  const double pi = std::numbers::pi;
  if (!(c.theta_start >= 0.0 && c.theta_stop <= pi && c.theta_start <= c.theta_stop)) {
    throw ConfigError("theta", "grid must satisfy 0 <= start <= stop <= pi");
  }
  if (!(c.noise_eps >= 0.0 && c.noise_eps <= 1.0)) throw ConfigError("noise-eps", "must lie in [0, 1]");
  if (c.trials < 1) throw ConfigError("trials", "must be >= 1");
}

SubsystemLayout game_layout(GameKind game, const std::vector<Index>& dims) {
  if (game == GameKind::kTripartite) return SubsystemLayout{{"A", dims.at(0)}, {"B1", dims.at(1)}, {"B2", dims.at(2)}};
  return SubsystemLayout{{"A", dims.at(0)}, {"B", dims.at(1)}};
}

Generator make_generator(const GeneratorSpec& spec, Index dim) {
  try {
    switch (spec.preset) {
      case GeneratorSpec::Preset::kPauliX:
        return Generator("A", pauli_x());
      case GeneratorSpec::Preset::kPauliZ:
        return Generator("A", pauli_z());
      case GeneratorSpec::Preset::kExplicit:
        if (spec.matrix.rows() != dim) throw std::invalid_argument("dimension does not match subsystem A");
        return Generator("A", spec.matrix);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("generator", e.what());
  }
  throw ConfigError("generator", "unknown preset");
}

RotationEnsemble make_ensemble(const SweepConfig& c) {
  std::vector<double> angles = c.angles;
  if (angles.empty()) {
    SeededSource source(c.seed, "angles");
    angles = random_angles(c.num_rotations, source);
  }
  try {
    if (c.probabilities.empty()) return RotationEnsemble::uniform(std::move(angles));
    return RotationEnsemble(std::move(angles), c.probabilities);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("angles", e.what());
  }
}

GameInstance make_game(const SweepConfig& c, DensityMatrix state) {
  return GameInstance(std::move(state), make_generator(c.generator, c.dims.at(0)), make_ensemble(c));
}

std::vector<std::string> sweep_columns(GameKind game) {
  std::vector<std::string> cols{"theta", "lhs"};
  if (game == GameKind::kTripartite) {
    const std::vector<std::string> variants{"thm1",  "thm1_first", "thm1_second", "coles", "coles_tripartite",
                                            "coles_bipartite_special"};
    for (const auto& v : variants) cols.push_back("rhs_" + v);
    for (const auto& v : variants) cols.push_back("gap_" + v);
    for (const char* t :
         {"S_R_given_AB1_kappa", "S_A_given_B2_omega", "S_R_kappa", "D_kappa_AB1_omega_AB1", "I_A_B1_omega",
          "I_B1_B2_rho", "S_A_given_B1B2_rho", "S_AB1B2_rho", "S_A_omega", "S_AB1_kappa", "S_AB1_omega", "S_B2_rho",
          "S_RA_kappa", "S_A_rho"}) {
      cols.emplace_back(t);
    }
  } else {
    cols.insert(cols.end(), {"rhs_thm2", "gap_thm2"});
    for (const char* t : {"S_R_given_AB_kappa", "S_A_given_B_omega", "S_R_kappa", "D_kappa_A_omega_A",
                          "S_A_given_B_rho", "S_A_kappa", "S_A_omega", "S_AB_kappa", "S_AB_omega", "S_RA_kappa",
                          "S_A_rho"}) {
      cols.emplace_back(t);
    }
  }
  return cols;
}

std::size_t SweepTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("SweepTable: no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::optional<double> SweepTable::value(std::size_t row, const std::string& name) const {
  return rows.at(row).at(column(name));
}

namespace {

DensityMatrix sweep_state(const SweepConfig& c, const SubsystemLayout& layout, double theta, SeededSource& noise) {
  if (c.noise_eps == 0.0) return theta_family(theta, layout);
  if (c.noise_placement == NoisePlacement::kAfter) return mix_noise(theta_family(theta, layout), c.noise_eps, noise);
  std::vector<DensityMatrix> factors;
  for (const auto& part : layout.parts()) {
    const SubsystemLayout single{part};
    DensityMatrix local = theta_family(theta, single);
    if (part.dim > 1) local = mix_noise(local, c.noise_eps, noise);
    factors.push_back(std::move(local));
  }
  return tensor(factors);
}

SweepRow row_from_report(const std::vector<std::string>& columns, double theta, const BoundReport& r) {
  SweepRow row(columns.size());
  std::optional<double> coles;
  for (const char* name : {"coles_tripartite", "coles_bipartite_special"}) {
    if (const BoundVariant* v = r.variant(name)) coles = std::max(coles.value_or(-std::numeric_limits<double>::infinity()), v->rhs);
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const std::string& col = columns[i];
    if (col == "theta") {
      row[i] = theta;
    } else if (col == "lhs") {
      row[i] = r.lhs;
    } else if (col == "rhs_coles") {
      row[i] = coles;
    } else if (col == "gap_coles") {
      if (coles) row[i] = r.lhs - *coles;
    } else if (col.rfind("rhs_", 0) == 0) {
      if (const BoundVariant* v = r.variant(col.substr(4))) row[i] = v->rhs;
    } else if (col.rfind("gap_", 0) == 0) {
      if (const BoundVariant* v = r.variant(col.substr(4))) row[i] = v->gap;
    } else {
      row[i] = r.term(col);
    }
  }
  return row;
}

}  // namespace

SweepTable run_sweep(const SweepConfig& c) {
  validate(c);
  const SubsystemLayout layout = game_layout(c.game, c.dims);
  const Generator generator = make_generator(c.generator, c.dims[0]);
  const RotationEnsemble ensemble = make_ensemble(c);

  SweepTable table;
  table.game = c.game;
  table.columns = sweep_columns(c.game);
  const std::size_t ncol = table.columns.size();
  std::vector<bool> is_gap(ncol);
  for (std::size_t i = 0; i < ncol; ++i) is_gap[i] = table.columns[i].rfind("gap_", 0) == 0;

  for (int point = 0; point < c.theta_steps; ++point) {
    const double theta = c.theta_steps == 1
                             ? c.theta_start
                             : c.theta_start + (c.theta_stop - c.theta_start) * point / (c.theta_steps - 1);
    SweepRow acc(ncol);
    for (int trial = 0; trial < c.trials; ++trial) {
      SeededSource noise(c.seed, "noise/trial" + std::to_string(trial), static_cast<std::uint64_t>(point));
      const GameInstance game(sweep_state(c, layout, theta, noise), generator, ensemble);
      const BoundReport report = c.game == GameKind::kTripartite ? tripartite_report(game) : bipartite_report(game);
      const SweepRow row = row_from_report(table.columns, theta, report);
      for (std::size_t i = 0; i < ncol; ++i) {
        if (!row[i]) continue;
        if (!acc[i]) {
          acc[i] = is_gap[i] ? *row[i] : *row[i] / c.trials;
        } else {
          acc[i] = is_gap[i] ? std::min(*acc[i], *row[i]) : *acc[i] + *row[i] / c.trials;
        }
      }
    }
    acc[0] = theta;
    table.rows.push_back(std::move(acc));
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return *a[0] < *b[0]; });
  return table;
}

}  // namespace teur
