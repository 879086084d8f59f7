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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "teur/expcli.hpp"

namespace teur {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("teur_expcli_" + name)).string();
}

SweepConfig small_config() {
  SweepConfig c = preset_config("fig4");
  c.theta_steps = 5;
  return c;
}

TEST(PresetTest, KnownPresetsValidate) {
  for (const auto& name : preset_names()) EXPECT_NO_THROW(validate(preset_config(name))) << name;
  EXPECT_THROW(preset_config("fig9"), ConfigError);
}

TEST(ValidateTest, NamesTheOffendingField) {
  auto field_of = [](SweepConfig c) {
    try {
      validate(c);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string();
  };
  SweepConfig c;
  c.trials = 0;
  EXPECT_EQ(field_of(c), "trials");
  c = {};
  c.theta_steps = 0;
  EXPECT_EQ(field_of(c), "theta-steps");
  c = {};
  c.dims = {2, 2};
  EXPECT_EQ(field_of(c), "dims");
  c = {};
  c.dims = {2, 0, 2};
  EXPECT_EQ(field_of(c), "dims");
  c = {};
  c.probabilities = {0.5, 0.6, 0, 0, 0, 0};
  EXPECT_EQ(field_of(c), "dist");
  c = {};
  c.angles = {0.1};
  EXPECT_EQ(field_of(c), "angles");
  c = {};
  c.noise_eps = 1.5;
  EXPECT_EQ(field_of(c), "noise-eps");
  c = {};
  c.theta_stop = 4.0;
  EXPECT_EQ(field_of(c), "theta");
  c = {};
  c.dims = {3, 1, 2};
  EXPECT_EQ(field_of(c), "generator");
}

TEST(ValidateTest, TrialsZeroRejectedBeforeComputation) {
  SweepConfig c = small_config();
  c.trials = 0;
  EXPECT_THROW(run_sweep(c), ConfigError);
}

TEST(MakeGeneratorTest, ExplicitMatrixMustBeHermitian) {
  GeneratorSpec spec;
  spec.preset = GeneratorSpec::Preset::kExplicit;
  spec.matrix = Matrix::Zero(2, 2);
  spec.matrix(0, 1) = 1.0;
  EXPECT_THROW(make_generator(spec, 2), ConfigError);
  spec.matrix = pauli_y();
  EXPECT_NO_THROW(make_generator(spec, 2));
  EXPECT_THROW(make_generator(spec, 3), ConfigError);
}

TEST(SweepTest, Fig3aSaturatesEverywhere) {
  const SweepTable t = run_sweep(preset_config("fig3a"));
  ASSERT_EQ(t.rows.size(), 50u);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    EXPECT_LE(std::abs(*t.value(r, "gap_thm1")), 1e-8) << "row " << r;
  }
  EXPECT_NEAR(*t.value(0, "theta"), 0.0, 0.0);
  EXPECT_NEAR(*t.value(49, "theta"), std::numbers::pi, 1e-15);
}

TEST(SweepTest, Fig4AboveRegisterEntropy) {
  const SweepTable t = run_sweep(preset_config("fig4"));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    EXPECT_GE(*t.value(r, "gap_thm1"), -1e-9);
    EXPECT_GE(*t.value(r, "rhs_thm1"), std::log2(6.0) - 1e-9);
    EXPECT_GE(*t.value(r, "rhs_thm1") - *t.value(r, "rhs_coles"), -1e-12);
  }
}

TEST(SweepTest, Fig5UsesBipartiteColumns) {
  SweepConfig c = preset_config("fig5");
  c.theta_steps = 3;
  const SweepTable t = run_sweep(c);
  EXPECT_EQ(t.columns, sweep_columns(GameKind::kBipartite));
  EXPECT_EQ(t.rows.size(), 3u);
  EXPECT_THROW(t.column("rhs_thm1"), std::out_of_range);
}

TEST(SweepTest, AbsentBoundsAreEmpty) {
  SweepConfig c = small_config();  // |B1| = 2 and uniform p
  const SweepTable t = run_sweep(c);
  EXPECT_FALSE(t.value(0, "rhs_coles_bipartite_special").has_value());
  EXPECT_TRUE(t.value(0, "rhs_coles_tripartite").has_value());
  c.probabilities = {0.5, 0.1, 0.1, 0.1, 0.1, 0.1};
  const SweepTable u = run_sweep(c);
  EXPECT_FALSE(u.value(0, "rhs_coles").has_value());
}

TEST(SweepTest, TrialsTakeMinimumGap) {
  SweepConfig c = small_config();
  c.trials = 3;
  const SweepTable multi = run_sweep(c);
  c.trials = 1;
  // Trial 0 uses the same noise stream in both runs.
  const SweepTable single = run_sweep(c);
  ASSERT_EQ(multi.rows.size(), 5u);
  bool some_term_differs = false;
  for (std::size_t r = 0; r < multi.rows.size(); ++r) {
    EXPECT_LE(*multi.value(r, "gap_thm1"), *single.value(r, "gap_thm1") + 1e-15);
    EXPECT_GE(*multi.value(r, "gap_thm1"), -1e-9);
    some_term_differs |= std::abs(*multi.value(r, "lhs") - *single.value(r, "lhs")) > 1e-9;
  }
  EXPECT_TRUE(some_term_differs);
}

TEST(SweepTest, NoisePlacementBeforeKeepsProductStructure) {
  SweepConfig c = preset_config("fig3b");
  c.theta_steps = 4;
  c.noise_placement = NoisePlacement::kBefore;
  const SweepTable t = run_sweep(c);
  for (std::size_t r = 0; r < t.rows.size(); ++r) EXPECT_LE(std::abs(*t.value(r, "gap_thm1")), 1e-8);
}

TEST(SweepTest, DeterministicForSeed) {
  SweepConfig c = small_config();
  std::ostringstream a, b, other;
  write_csv(a, run_sweep(c));
  write_csv(b, run_sweep(c));
  c.seed += 1;
  write_csv(other, run_sweep(c));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), other.str());
}

TEST(SerializeTest, EmptyAndSingleRow) {
  SweepTable t;
  t.columns = sweep_columns(GameKind::kBipartite);
  std::ostringstream empty;
  write_csv(empty, t);
  const std::string header = empty.str();
  EXPECT_EQ(std::count(header.begin(), header.end(), '\n'), 1);
  EXPECT_EQ(header.rfind("theta,lhs,rhs_thm2,gap_thm2,", 0), 0u);

  SweepConfig c = preset_config("fig5");
  c.theta_steps = 1;
  std::ostringstream one;
  write_csv(one, run_sweep(c));
  const std::string s = one.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
  EXPECT_EQ(s.back(), '\n');
}

TEST(SerializeTest, CsvRoundTripsToTwelveDigits) {
  const SweepTable t = run_sweep(small_config());
  std::stringstream ss;
  write_csv(ss, t);
  const SweepTable back = read_csv(ss);
  ASSERT_EQ(back.columns, t.columns);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      ASSERT_EQ(back.rows[r][i].has_value(), t.rows[r][i].has_value());
      if (!t.rows[r][i]) continue;
      const double x = *t.rows[r][i], y = *back.rows[r][i];
      EXPECT_LE(std::abs(x - y), 5e-12 * std::max(1.0, std::abs(x))) << t.columns[i];
      EXPECT_EQ(format_number(x), format_number(y));
    }
  }
}

TEST(SerializeTest, JsonHasSameKeysAndNulls) {
  const SweepTable t = run_sweep(small_config());
  std::ostringstream out;
  write_json(out, t);
  const auto j = nlohmann::json::parse(out.str());
  ASSERT_EQ(j.size(), t.rows.size());
  for (const auto& col : t.columns) EXPECT_TRUE(j[0].contains(col)) << col;
  EXPECT_TRUE(j[0]["rhs_coles_bipartite_special"].is_null());
  EXPECT_EQ(format_number(j[2]["lhs"].get<double>()), format_number(*t.value(2, "lhs")));
}

TEST(SerializeTest, RejectsViolatedGapAndUnwritablePath) {
  SweepTable t = run_sweep(small_config());
  EXPECT_THROW(serialize(t, OutputFormat::kCsv, "/nonexistent-dir/x.csv"), std::runtime_error);
  t.rows[0][t.column("gap_thm1")] = -1e-6;
  EXPECT_THROW(validate_rows(t), std::invalid_argument);
  EXPECT_THROW(serialize(t, OutputFormat::kCsv, temp_path("bad.csv")), std::invalid_argument);
}

TEST(SerializeTest, FileOutputIsByteIdenticalAcrossRuns) {
  const std::string a = temp_path("a.json"), b = temp_path("b.json");
  serialize(run_sweep(small_config()), OutputFormat::kJson, a);
  serialize(run_sweep(small_config()), OutputFormat::kJson, b);
  EXPECT_EQ(slurp(a), slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(FormatNumberTest, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(std::numbers::pi), "3.14159265359");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-1.5e-20), "-1.5e-20");
}

TEST(MatrixJsonTest, RoundTripAndErrors) {
  const Matrix y = pauli_y();
  EXPECT_LE(max_abs(parse_matrix_json(matrix_to_json(y)) - y), 0.0);
  EXPECT_THROW(parse_matrix_json("[[1, 2]]"), std::invalid_argument);
  EXPECT_THROW(parse_matrix_json("[[[1, 0]], [[1, 0], [0, 0]]]"), std::invalid_argument);
  EXPECT_THROW(parse_matrix_json("not json"), std::invalid_argument);
  EXPECT_THROW(read_matrix_json_file("/nonexistent.json"), std::invalid_argument);
}

TEST(ReportJsonTest, ContainsBoundsAndTerms) {
  SeededSource src(1, "report");
  const BoundReport r = tripartite_report(random_game(SubsystemLayout{{"A", 2}, {"B1", 2}, {"B2", 2}}, 3, true, src));
  const auto j = nlohmann::json::parse(report_to_json(r));
  EXPECT_EQ(j["game"], "tripartite");
  EXPECT_TRUE(j["bounds"].contains("thm1"));
  EXPECT_TRUE(j["terms"].contains("S_R_kappa"));
  EXPECT_FALSE(j["bounds"].contains("coles_bipartite_special"));
}

TEST(RunVerifyTest, SuitesPass) {
  for (const char* suite : {"identities", "algebra"}) {
    const VerifyReport r = run_verify(suite, 100, 20210601);
    EXPECT_TRUE(r.pass()) << suite;
    EXPECT_FALSE(r.checks.empty());
  }
}

TEST(RunVerifyTest, UnknownSuiteAndInjectedFault) {
  EXPECT_THROW(run_verify("nope", 10, 1), ConfigError);
  const VerifyReport r = run_verify("algebra", 5, 1, {.inject_fault = true});
  EXPECT_FALSE(r.pass());
  ASSERT_EQ(r.failures().size(), 1u);
  const auto j = nlohmann::json::parse(verify_report_to_json(r));
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_EQ(j["failures"].size(), 1u);
}

}  // namespace
}  // namespace teur
