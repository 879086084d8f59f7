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

// teur: run bound sweeps, verification suites and single-instance reports.
//
// Exit status: 0 success, 1 verification failure, 2 configuration error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "teur/expcli.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

std::vector<double> parse_doubles(const std::string& field, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw teur::ConfigError(field, "cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw teur::ConfigError(field, "empty list");
  return out;
}

std::vector<teur::Index> parse_dims(const std::string& text) {
  std::vector<teur::Index> dims;
  for (double d : parse_doubles("dims", text)) {
    if (d != static_cast<double>(static_cast<teur::Index>(d))) throw teur::ConfigError("dims", "dimensions are integers");
    dims.push_back(static_cast<teur::Index>(d));
  }
  return dims;
}

teur::GeneratorSpec parse_generator(const std::string& text) {
  teur::GeneratorSpec spec;
  if (text == "pauli-x") {
    spec.preset = teur::GeneratorSpec::Preset::kPauliX;
  } else if (text == "pauli-z") {
    spec.preset = teur::GeneratorSpec::Preset::kPauliZ;
  } else {
    spec.preset = teur::GeneratorSpec::Preset::kExplicit;
    try {
      spec.matrix = teur::read_matrix_json_file(text);
    } catch (const std::invalid_argument& e) {
      throw teur::ConfigError("generator", e.what());
    }
  }
  return spec;
}

teur::GameKind parse_game(const std::string& text) {
  if (text == "tripartite") return teur::GameKind::kTripartite;
  if (text == "bipartite") return teur::GameKind::kBipartite;
  throw teur::ConfigError("game", "expected 'tripartite' or 'bipartite'");
}

/// Raw flag values shared by `sweep` and `bounds`; only flags the user gave
/// are applied on top of the preset or defaults.
struct GameFlags {
  std::string game, dims, angles, dist, generator;
  int num_rotations = 0;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    app->add_option("--game", game, "tripartite | bipartite");
    app->add_option("--dims", dims, "comma-separated dimensions: A,B1,B2 or A,B");
    app->add_option("--num-rotations", num_rotations, "number of rotation angles |R|");
    app->add_option("--angles", angles, "comma-separated rotation angles (default: random)");
    app->add_option("--dist", dist, "'uniform' or comma-separated probabilities");
    app->add_option("--generator", generator, "pauli-x | pauli-z | path to a JSON Hermitian matrix");
    app->add_option("--seed", seed, "base seed");
  }

  void apply(const CLI::App* app, teur::SweepConfig& c) const {
    if (app->count("--game")) {
      const teur::GameKind kind = parse_game(game);
      if (kind != c.game && !app->count("--dims")) c.dims = kind == teur::GameKind::kTripartite
                                                               ? std::vector<teur::Index>{2, 1, 2}
                                                               : std::vector<teur::Index>{2, 2};
      c.game = kind;
    }
    if (app->count("--dims")) c.dims = parse_dims(dims);
    if (app->count("--angles")) {
      c.angles = parse_doubles("angles", angles);
      if (!app->count("--num-rotations")) c.num_rotations = static_cast<int>(c.angles.size());
    }
    if (app->count("--num-rotations")) c.num_rotations = num_rotations;
    if (app->count("--dist")) {
      c.probabilities = dist == "uniform" ? std::vector<double>{} : parse_doubles("dist", dist);
      if (!c.probabilities.empty() && !app->count("--num-rotations") && !app->count("--angles")) {
        c.num_rotations = static_cast<int>(c.probabilities.size());
      }
    }
    if (app->count("--generator")) c.generator = parse_generator(generator);
    if (app->count("--seed")) c.seed = seed;
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

teur::OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return teur::OutputFormat::kCsv;
  if (text == "json") return teur::OutputFormat::kJson;
  throw teur::ConfigError("format", "expected 'csv' or 'json'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic time-energy uncertainty bounds: sweeps, verification and single reports"};
  app.require_subcommand(1);

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate every bound along the theta family");
  GameFlags sweep_flags;
  std::string preset, placement, format = "csv", out;
  int theta_steps = 0, trials = 0;
  double noise_eps = 0.0, theta_start = 0.0, theta_stop = 0.0;
  sweep->add_option("--preset", preset, "fig3a | fig3b | fig4 | fig5");
  sweep_flags.add_to(sweep);
  sweep->add_option("--theta-steps", theta_steps, "number of theta grid points");
  sweep->add_option("--theta-start", theta_start, "first theta (default 0)");
  sweep->add_option("--theta-stop", theta_stop, "last theta (default pi)");
  sweep->add_option("--noise-eps", noise_eps, "weight of the random noise state");
  sweep->add_option("--noise-placement", placement, "after: mix the whole state | before: mix each factor");
  sweep->add_option("--trials", trials, "noise draws per grid point");
  sweep->add_option("--out", out, "output file (default stdout)");
  sweep->add_option("--format", format, "csv | json");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
  std::string suite = "all", verify_format = "text";
  int samples = 100;
  std::uint64_t verify_seed = 20210601;
  bool inject_fault = false;
  verify->add_option("suite", suite, "qstate | entropy | algebra | identities | games | all");
  verify->add_option("--samples", samples, "random samples per check");
  verify->add_option("--seed", verify_seed, "base seed");
  verify->add_option("--format", verify_format, "text | json");
#ifdef TEUR_TEST_HOOKS
  verify->add_flag("--inject-fault", inject_fault, "add a broken conditional expectation");
#endif

  // bounds
  CLI::App* bounds = app.add_subcommand("bounds", "report every bound for one state");
  GameFlags bounds_flags;
  std::string state_path, bounds_out;
  bounds->add_option("--state", state_path, "JSON density matrix of A B1 B2 (or A B)")->required();
  bounds_flags.add_to(bounds);
  bounds->add_option("--out", bounds_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sweep) {
      teur::SweepConfig c = preset.empty() ? teur::SweepConfig{} : teur::preset_config(preset);
      sweep_flags.apply(sweep, c);
      if (sweep->count("--theta-steps")) c.theta_steps = theta_steps;
      if (sweep->count("--theta-start")) c.theta_start = theta_start;
      if (sweep->count("--theta-stop")) c.theta_stop = theta_stop;
      if (sweep->count("--noise-eps")) c.noise_eps = noise_eps;
      if (sweep->count("--noise-placement")) {
        if (placement == "after") {
          c.noise_placement = teur::NoisePlacement::kAfter;
        } else if (placement == "before") {
          c.noise_placement = teur::NoisePlacement::kBefore;
        } else {
          throw teur::ConfigError("noise-placement", "expected 'before' or 'after'");
        }
      }
      if (sweep->count("--trials")) c.trials = trials;
      c.format = parse_format(format);
      c.output_path = out;
      teur::validate(c);

      const teur::SweepTable table = teur::run_sweep(c);
      try {
        teur::validate_rows(table);
      } catch (const std::invalid_argument& e) {
        std::cerr << "bound violated: " << e.what() << '\n';
        return kExitFailed;
      }
      if (out.empty() || out == "-") {
        if (c.format == teur::OutputFormat::kCsv) {
          teur::write_csv(std::cout, table);
        } else {
          teur::write_json(std::cout, table);
        }
      } else {
        teur::serialize(table, c.format, out);
      }
      return kExitOk;
    }

    if (*verify) {
      if (verify_format != "text" && verify_format != "json") {
        throw teur::ConfigError("format", "expected 'text' or 'json'");
      }
      const teur::VerifyReport report = teur::run_verify(suite, samples, verify_seed, {inject_fault});
      if (verify_format == "json") {
        std::cout << teur::verify_report_to_json(report) << '\n';
      } else {
        for (const auto& c : report.checks) {
          std::cout << (c.pass ? "PASS " : "FAIL ") << c.suite << ": " << c.name << " (" << c.detail << ")\n";
        }
        std::cout << (report.pass() ? "all checks passed" : std::to_string(report.failures().size()) + " check(s) failed")
                  << '\n';
      }
      return report.pass() ? kExitOk : kExitFailed;
    }

    if (*bounds) {
      teur::SweepConfig c;
      bounds_flags.apply(bounds, c);
      teur::validate(c);
      const teur::SubsystemLayout layout = teur::game_layout(c.game, c.dims);
      teur::Matrix m;
      try {
        m = teur::read_matrix_json_file(state_path);
      } catch (const std::invalid_argument& e) {
        throw teur::ConfigError("state", e.what());
      }
      std::optional<teur::DensityMatrix> rho;
      try {
        rho.emplace(layout, m);
      } catch (const std::invalid_argument& e) {
        throw teur::ConfigError("state", e.what());
      }
      const teur::GameInstance game = teur::make_game(c, *rho);
      const teur::BoundReport r =
          c.game == teur::GameKind::kTripartite ? teur::tripartite_report(game) : teur::bipartite_report(game);
      write_text(bounds_out, teur::report_to_json(r) + "\n");
      for (const auto& v : r.variants) {
        if (v.gap < -teur::kGapTolerance) {
          std::cerr << "bound " << v.name << " violated: gap " << v.gap << '\n';
          return kExitFailed;
        }
      }
      return kExitOk;
    }
  } catch (const teur::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
