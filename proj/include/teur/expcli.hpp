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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "teur/ensembles.hpp"
#include "teur/games.hpp"

namespace teur {

/// Invalid experiment configuration; maps to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class NoisePlacement { kBefore, kAfter };
enum class OutputFormat { kCsv, kJson };

struct GeneratorSpec {
  enum class Preset { kPauliX, kPauliZ, kExplicit };
  Preset preset = Preset::kPauliX;
  Matrix matrix;  // used when preset == kExplicit
};

struct SweepConfig {
  GameKind game = GameKind::kTripartite;
  /// (A, B1, B2) for the tripartite game, (A, B) for the bipartite one.
  std::vector<Index> dims{2, 1, 2};
  int num_rotations = 6;
  /// Empty means uniform.
  std::vector<double> probabilities;
  /// Empty means draw `num_rotations` uniform angles from the base seed.
  std::vector<double> angles;
  GeneratorSpec generator;
  double theta_start = 0.0;
  double theta_stop = std::numbers::pi;
  int theta_steps = 50;
  double noise_eps = 0.0;
  NoisePlacement noise_placement = NoisePlacement::kAfter;
  int trials = 1;
  std::uint64_t seed = 20210601;
  std::string output_path;
  OutputFormat format = OutputFormat::kCsv;
};

/// Built-in configurations: "fig3a", "fig3b", "fig4", "fig5".
SweepConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// Throws ConfigError naming the first offending field.
void validate(const SweepConfig& config);

/// One value per column; absent bounds are std::nullopt.
using SweepRow = std::vector<std::optional<double>>;

struct SweepTable {
  GameKind game = GameKind::kTripartite;
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;

  std::size_t column(const std::string& name) const;
  std::optional<double> value(std::size_t row, const std::string& name) const;
};

std::vector<std::string> sweep_columns(GameKind game);

/// One row per theta grid point, sorted by theta. With trials > 1 each
/// column holds the per-point mean, except gap columns, which hold the
/// minimum over trials. Every grid point draws noise from its own stream
/// keyed by (seed, point index, trial), so the result does not depend on
/// evaluation order.
SweepTable run_sweep(const SweepConfig& config);

/// Builds the game for one state under a sweep configuration.
GameInstance make_game(const SweepConfig& config, DensityMatrix state);
RotationEnsemble make_ensemble(const SweepConfig& config);
Generator make_generator(const GeneratorSpec& spec, Index dim);
SubsystemLayout game_layout(GameKind game, const std::vector<Index>& dims);

// Serialization. Numbers carry 12 significant digits; CSV leaves absent
// values empty and JSON writes null.

/// Throws std::invalid_argument if any gap column is below −1e-9.
void validate_rows(const SweepTable& table);
void write_csv(std::ostream& out, const SweepTable& table);
void write_json(std::ostream& out, const SweepTable& table);
/// Validates and writes to `path`; throws std::runtime_error if unwritable.
void serialize(const SweepTable& table, OutputFormat format, const std::string& path);
SweepTable read_csv(std::istream& in);
std::string format_number(double value);

std::string report_to_json(const BoundReport& report);

/// Dense complex matrix as nested arrays of [re, im] pairs.
Matrix parse_matrix_json(const std::string& text);
Matrix read_matrix_json_file(const std::string& path);
std::string matrix_to_json(const Matrix& m);

/// Random game on `layout` (must contain A): Ginibre state of random rank,
/// random nondegenerate generator, `num_rotations` random angles with uniform
/// or random probabilities.
GameInstance random_game(const SubsystemLayout& layout, int num_rotations, bool uniform, SeededSource& source);

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool pass() const;
  std::vector<const CheckResult*> failures() const;
};

struct VerifyOptions {
  /// Adds a deliberately broken conditional expectation (negative control).
  bool inject_fault = false;
};

/// Suites: "qstate", "entropy", "algebra", "identities", "games", "all".
std::vector<std::string> verify_suites();
/// Throws ConfigError for an unknown suite.
VerifyReport run_verify(const std::string& suite, int samples, std::uint64_t seed, VerifyOptions options = {});
std::string verify_report_to_json(const VerifyReport& report);

}  // namespace teur
