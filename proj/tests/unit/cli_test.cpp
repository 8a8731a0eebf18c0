// Copyright 2026 The homexpr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace homexpr::cli {
namespace {

namespace fs = std::filesystem;

std::string data(const char* name) { return (fs::path(HOMEXPR_TEST_DATA_DIR) / name).string(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("homexpr-cli-test-" + std::string(::testing::UnitTest::GetInstance()
                                                  ->current_test_info()
                                                  ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv(kSeedEnv);
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv(kSeedEnv);
  }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::vector<std::string> kSmallBudget{"--haar-samples", "40", "--theta-samples", "30",
                                            "--refine-iters", "1"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

TEST_F(CliTest, NoArgumentsIsConfigError) {
  const Result r = invoke({});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST_F(CliTest, MissingCircuitPrintsUsage) {
  const Result r = invoke({"expressibility", "--group", "swap-2q"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("--circuit"), std::string::npos);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST_F(CliTest, HelpExitsZero) {
  const Result r = invoke({"sim-expr", "--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("--bins"), std::string::npos);
}

TEST_F(CliTest, UnknownCircuitAndGroupNameTheFlag) {
  Result r = invoke({"expressibility", "--circuit", "nonexistent"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("--circuit"), std::string::npos);
  r = invoke({"expressibility", "--circuit", "paper-circuit-1", "--group", "rotate-3"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("--group"), std::string::npos);
  r = invoke({"expressibility", "--circuit", "paper-circuit-1", "--group", data("pauli_not_closed.json")});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("--group"), std::string::npos);
}

TEST_F(CliTest, NonPositiveBudgetsNameTheFlag) {
  const Result r = invoke({"expressibility", "--circuit", "paper-circuit-1", "--haar-samples", "0"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("--haar-samples"), std::string::npos);
  const Result s = invoke({"expressibility", "--circuit", "paper-circuit-1", "--refine-shrink", "1.5"});
  EXPECT_EQ(s.code, kExitConfig);
  EXPECT_NE(s.err.find("--refine-shrink"), std::string::npos);
}

TEST_F(CliTest, OversizedBudgetIsGuardRefusal) {
  const Result r = invoke({"expressibility", "--circuit", "paper-circuit-1", "--group", "swap-2q",
                           "--haar-samples", "1000000", "--theta-samples", "1000000"});
  EXPECT_EQ(r.code, kExitGuard);
  EXPECT_NE(r.err.find("--haar-samples"), std::string::npos);
  EXPECT_EQ(invoke({"haar-test", "--dim", "32", "--samples", "10"}).code, kExitGuard);
}

TEST_F(CliTest, ExpressibilityWritesReportWithManifest) {
  const Result r = invoke(with({"expressibility", "--circuit", "paper-circuit-1", "--group",
                                "swap-2q", "--seed", "7", "--out", path("r.json")},
                               kSmallBudget));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("+/-"), std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(path("r.json")));
  EXPECT_EQ(doc["per_target_minima"].size(), 40u);
  const auto& m = doc["manifest"];
  EXPECT_EQ(m["command"], "expressibility");
  EXPECT_EQ(m["seed"], 7);
  EXPECT_EQ(m["config"]["group"], "swap-2q");
  EXPECT_EQ(m["config"]["haar-samples"], 40);
  EXPECT_EQ(m["outputs"], nlohmann::json::array({"r.json"}));
  EXPECT_FALSE(m["config"].contains("threads"));
}

TEST_F(CliTest, ReportsAreByteIdenticalAcrossThreadCounts) {
  for (const char* threads : {"1", "3"}) {
    const std::string out = path(threads[0] == '1' ? "a.json" : "b.json");
    ASSERT_EQ(invoke(with({"expressibility", "--circuit", "paper-circuit-2", "--group", "swap-2q",
                           "--seed", "3", "--threads", threads, "--out", out},
                          kSmallBudget))
                  .code,
              kExitOk);
  }
  // Output names differ, so compare everything except the manifest's file list.
  auto a = nlohmann::json::parse(slurp(path("a.json")));
  auto b = nlohmann::json::parse(slurp(path("b.json")));
  a["manifest"].erase("outputs");
  b["manifest"].erase("outputs");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST_F(CliTest, SeedComesFromEnvironment) {
  const auto args = with({"expressibility", "--circuit", "paper-circuit-1"}, kSmallBudget);
  const Result explicit_seed = invoke(with(args, {"--seed", "11"}));
  setenv(kSeedEnv, "11", 1);
  const Result from_env = invoke(args);
  EXPECT_EQ(from_env.code, kExitOk);
  EXPECT_EQ(from_env.out, explicit_seed.out);
  setenv(kSeedEnv, "eleven", 1);
  const Result bad = invoke(args);
  EXPECT_EQ(bad.code, kExitConfig);
  EXPECT_NE(bad.err.find(kSeedEnv), std::string::npos);
}

TEST_F(CliTest, JsonCircuitMatchesBuiltin) {
  const auto tail = with({"--seed", "5"}, kSmallBudget);
  const Result a = invoke(with({"expressibility", "--circuit", "paper-circuit-1"}, tail));
  const Result b = invoke(with({"expressibility", "--circuit", data("circuit1.json")}, tail));
  ASSERT_EQ(b.code, kExitOk) << b.err;
  // Labels differ; the number after '=' must not.
  EXPECT_EQ(a.out.substr(a.out.find('=')), b.out.substr(b.out.find('=')));
}

TEST_F(CliTest, SimExprRejectsSingleBin) {
  const Result r = invoke({"sim-expr", "--circuit", "paper-circuit-2", "--bins", "1"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("--bins"), std::string::npos);
}

TEST_F(CliTest, SimExprCsvIsDeterministic) {
  for (const char* name : {"h1.csv", "h2.csv"}) {
    ASSERT_EQ(invoke({"sim-expr", "--circuit", "paper-circuit-2", "--pairs", "2000", "--seed", "4",
                      "--out", path(name)})
                  .code,
              kExitOk);
  }
  const std::string csv = slurp(path("h1.csv"));
  EXPECT_EQ(csv, slurp(path("h2.csv")));
  EXPECT_EQ(csv.rfind("bin_lo,bin_hi,count\n", 0), 0u);
  const auto manifest = nlohmann::json::parse(slurp(path("h1.csv.manifest.json")));
  EXPECT_EQ(manifest["outputs"], nlohmann::json::array({"h1.csv"}));
  EXPECT_EQ(manifest["config"]["bins"], 75);
}

TEST_F(CliTest, DesignCheckSicPasses) {
  const Result r = invoke({"design-check", "--ensemble", data("sic_qubit.json"), "--group",
                           "identity", "--t", "2", "--epsilon", "0.05", "--samples", "100000"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST_F(CliTest, DesignCheckSingleStateFails) {
  const Result r = invoke({"design-check", "--ensemble", data("single_state.json"), "--t", "1",
                           "--epsilon", "0.05", "--out", path("d.json")});
  EXPECT_EQ(r.code, kExitFail);
  const auto doc = nlohmann::json::parse(slurp(path("d.json")));
  EXPECT_NEAR(doc["distance"].get<double>(), 0.5, 0.01);
  EXPECT_FALSE(doc["pass"].get<bool>());
}

TEST_F(CliTest, DesignCheckMalformedEnsembleIsConfigError) {
  EXPECT_EQ(invoke({"design-check", "--ensemble", data("malformed_ensemble.json")}).code,
            kExitConfig);
  EXPECT_EQ(invoke({"design-check", "--ensemble", data("missing.json")}).code, kExitConfig);
  const Result r = invoke({"design-check", "--ensemble", data("sic_qubit.json"), "--policy", "best"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("--policy"), std::string::npos);
}

TEST_F(CliTest, HaarTestOutcomes) {
  EXPECT_EQ(invoke({"haar-test", "--dim", "4", "--samples", "100000"}).code, kExitOk);
  const Result one = invoke({"haar-test", "--dim", "1", "--samples", "10000"});
  EXPECT_EQ(one.code, kExitOk);
  EXPECT_NE(one.out.find("phase"), std::string::npos);
  EXPECT_EQ(invoke({"haar-test", "--samples", "0"}).code, kExitConfig);
}

TEST_F(CliTest, VerifyManifestReproducesReport) {
  ASSERT_EQ(invoke(with({"expressibility", "--circuit", data("circuit1.json"), "--group",
                         data("swap_group.json"), "--seed", "2", "--out", path("r.json")},
                        kSmallBudget))
                .code,
            kExitOk);
  const Result ok = invoke({"--verify-manifest", path("r.json")});
  EXPECT_EQ(ok.code, kExitOk) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("MATCH"), std::string::npos);

  // Any edit to the stored result must be detected.
  auto doc = nlohmann::json::parse(slurp(path("r.json")));
  doc["estimate"] = 0.5;
  std::ofstream(path("r.json"), std::ios::trunc) << doc.dump(2) << "\n";
  EXPECT_EQ(invoke({"--verify-manifest", path("r.json")}).code, kExitFail);
}

TEST_F(CliTest, VerifyManifestForSidecar) {
  ASSERT_EQ(invoke({"sim-expr", "--circuit", "paper-circuit-1", "--pairs", "500", "--seed", "8",
                    "--out", path("h.csv")})
                .code,
            kExitOk);
  const Result r = invoke({"--verify-manifest", path("h.csv.manifest.json")});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
}

TEST_F(CliTest, VerifyManifestRejectsPlainFiles) {
  EXPECT_EQ(invoke({"--verify-manifest", data("sic_qubit.json")}).code, kExitConfig);
}

TEST_F(CliTest, ReproduceTableRunsWithSmallBudgets) {
  const Result r = invoke({"reproduce-paper-table", "--haar-samples", "20", "--theta-samples",
                           "20", "--pairs", "200", "--out", path("t.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("paper-circuit-1"), std::string::npos);
  EXPECT_NE(r.out.find("paper-circuit-2"), std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(path("t.json")));
  EXPECT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["manifest"]["seed"], 7);
}

}  // namespace
}  // namespace homexpr::cli
