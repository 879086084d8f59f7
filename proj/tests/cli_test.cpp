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

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "teur/expcli.hpp"

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& binary, const std::string& args) {
  const std::string cmd = binary + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

Result teur_cli(const std::string& args) { return run(TEUR_CLI, args); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("teur_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, SweepPresetWritesFiftyRows) {
  const Result r = teur_cli("sweep --preset fig3a --out " + path("a.csv"));
  ASSERT_EQ(r.status, 0);
  std::istringstream in(read("a.csv"));
  const teur::SweepTable t = teur::read_csv(in);
  EXPECT_EQ(t.rows.size(), 50u);
  EXPECT_EQ(t.columns, teur::sweep_columns(teur::GameKind::kTripartite));
}

TEST_F(CliTest, SweepIsByteIdenticalAcrossRuns) {
  ASSERT_EQ(teur_cli("sweep --preset fig5 --theta-steps 7 --out " + path("a.csv")).status, 0);
  ASSERT_EQ(teur_cli("sweep --preset fig5 --theta-steps 7 --out " + path("b.csv")).status, 0);
  EXPECT_EQ(read("a.csv"), read("b.csv"));
  ASSERT_EQ(teur_cli("sweep --preset fig5 --theta-steps 7 --seed 5 --out " + path("c.csv")).status, 0);
  EXPECT_NE(read("a.csv"), read("c.csv"));
}

TEST_F(CliTest, SweepStdoutAndJson) {
  const Result csv = teur_cli("sweep --game bipartite --theta-steps 2");
  ASSERT_EQ(csv.status, 0);
  EXPECT_EQ(csv.out.rfind("theta,lhs,rhs_thm2", 0), 0u);
  const Result json = teur_cli("sweep --preset fig4 --theta-steps 3 --format json");
  ASSERT_EQ(json.status, 0);
  EXPECT_EQ(nlohmann::json::parse(json.out).size(), 3u);
}

TEST_F(CliTest, FlagsOverridePreset) {
  const Result r = teur_cli("sweep --preset fig4 --theta-steps 4 --num-rotations 2 --angles 0,1 --dist 0.25,0.75 "
                         "--generator pauli-z --noise-eps 0 --trials 2");
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  const teur::SweepTable t = teur::read_csv(in);
  ASSERT_EQ(t.rows.size(), 4u);
  const double h = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  EXPECT_NEAR(*t.value(0, "S_R_kappa"), h, 1e-11);
  EXPECT_FALSE(t.value(0, "rhs_coles").has_value());
}

TEST_F(CliTest, ExplicitGeneratorFile) {
  const std::string g = write("g.json", "[[[0,0],[0,-1]],[[0,1],[0,0]]]");
  EXPECT_EQ(teur_cli("sweep --theta-steps 2 --generator " + g).status, 0);
  const std::string bad = write("bad.json", "[[[0,0],[1,0]],[[0,0],[0,0]]]");
  EXPECT_EQ(teur_cli("sweep --theta-steps 2 --generator " + bad).status, 2);
}

TEST_F(CliTest, ConfigurationErrorsExitTwo) {
  EXPECT_EQ(teur_cli("sweep --preset fig4 --trials 0").status, 2);
  EXPECT_EQ(teur_cli("sweep --preset nope").status, 2);
  EXPECT_EQ(teur_cli("sweep --dims 2,x,2").status, 2);
  EXPECT_EQ(teur_cli("sweep --noise-placement sideways").status, 2);
  EXPECT_EQ(teur_cli("sweep --format xml").status, 2);
  EXPECT_EQ(teur_cli("sweep --no-such-flag").status, 2);
  EXPECT_EQ(teur_cli("").status, 2);
  EXPECT_EQ(teur_cli("sweep --theta-steps 2 --out /nonexistent-dir/x.csv").status, 2);
  EXPECT_EQ(teur_cli("--help").status, 0);
}

TEST_F(CliTest, VerifySuites) {
  EXPECT_EQ(teur_cli("verify identities --samples 100").status, 0);
  EXPECT_EQ(teur_cli("verify bogus").status, 2);
  const Result json = teur_cli("verify qstate --samples 5 --format json");
  ASSERT_EQ(json.status, 0);
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_TRUE(j["failures"].empty());
}

TEST_F(CliTest, InjectedFaultOnlyInHookedBuild) {
  const Result hooked = run(TEUR_CLI_HOOKED, "verify algebra --samples 5 --inject-fault --format json");
  EXPECT_EQ(hooked.status, 1);
  const auto j = nlohmann::json::parse(hooked.out);
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_EQ(j["failures"].size(), 1u);
  EXPECT_EQ(run(TEUR_CLI_HOOKED, "verify algebra --samples 5").status, 0);
  EXPECT_EQ(teur_cli("verify algebra --inject-fault").status, 2);
}

TEST_F(CliTest, BoundsForBellState) {
  const double h = 1.0 / std::sqrt(2.0);
  std::ostringstream m;
  m << "[[[" << h * h << ",0],[0,0],[0,0],[" << h * h << ",0]],[[0,0],[0,0],[0,0],[0,0]],"
    << "[[0,0],[0,0],[0,0],[0,0]],[[" << h * h << ",0],[0,0],[0,0],[" << h * h << ",0]]]";
  const std::string state = write("bell.json", m.str());
  const Result r = teur_cli("bounds --state " + state +
                         " --game bipartite --dims 2,2 --generator pauli-z --angles 0,1.5707963267948966");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["game"], "bipartite");
  EXPECT_NEAR(j["lhs"].get<double>(), 0.0, 1e-9);
  EXPECT_NEAR(j["bounds"]["thm2"]["rhs"].get<double>(), 0.0, 1e-9);

  EXPECT_EQ(teur_cli("bounds --state " + state + " --game tripartite --dims 2,2,2").status, 2);
  EXPECT_EQ(teur_cli("bounds --state " + path("missing.json")).status, 2);
  EXPECT_EQ(teur_cli("bounds").status, 2);
}

}  // namespace
