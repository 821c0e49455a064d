// Copyright 2026 The mdscorpus Authors.
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

#include "cli.h"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracle/oracle.h"
#include "test_util.h"

namespace mdscorpus {
namespace {

using testutil::FixturePath;
using testutil::GoldenPath;
using testutil::TempDir;

struct CliRun {
  int status = 0;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mdscorpus");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.status = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

TEST(CliBuildTest, CentrumMatchesGolden) {
  TempDir dir;
  const CliRun r = Cli({"build", "--input", FixturePath("clusters_10.jsonl"),
                        "--output", dir / "out.jsonl"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(testutil::ReadFile(dir / "out.jsonl"),
            testutil::ReadFile(GoldenPath("centrum_clusters_10.jsonl")));
  const auto report =
      nlohmann::json::parse(testutil::ReadFile(dir / "out.jsonl.report.json"));
  EXPECT_EQ(report["clusters_retained"], 7);
  EXPECT_EQ(report["rejects_by_reason"]["TooFewDocs"], 2);
  EXPECT_EQ(report["rejects_by_reason"]["SummaryTooShort"], 1);
}

TEST(CliBuildTest, PrimeraMatchesGolden) {
  TempDir dir;
  const CliRun r =
      Cli({"build", "--mode", "primera", "--input",
           FixturePath("clusters_10.jsonl"), "--output", dir / "out.jsonl",
           "--report", dir / "r.json", "--json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(testutil::ReadFile(dir / "out.jsonl"),
            testutil::ReadFile(GoldenPath("primera_clusters_10.jsonl")));
  EXPECT_EQ(nlohmann::json::parse(r.out)["clusters_retained"], 9);
}

TEST(CliBuildTest, UsageErrors) {
  TempDir dir;
  CliRun r = Cli({"build", "--output", dir / "out.jsonl"});
  EXPECT_EQ(r.status, kExitUsage);
  EXPECT_NE(r.err.find("--input"), std::string::npos);
  r = Cli({"build", "--input", FixturePath("clusters_10.jsonl"), "--output",
           dir / "o.jsonl", "--frobnicate"});
  EXPECT_EQ(r.status, kExitUsage);
  r = Cli(
      {"build", "--input", dir / "missing.jsonl", "--output", dir / "o.jsonl"});
  EXPECT_EQ(r.status, kExitUsage);
  r = Cli({"build", "--input", FixturePath("clusters_10.jsonl"), "--output",
           dir / "o.jsonl", "--primera-ratio", "1.5"});
  EXPECT_EQ(r.status, kExitUsage);
  r = Cli({"build", "--input", FixturePath("clusters_10.jsonl"), "--output",
           dir / "o.jsonl", "--mode", "pyramid"});
  EXPECT_EQ(r.status, kExitUsage);
  r = Cli({"frobnicate"});
  EXPECT_EQ(r.status, kExitUsage);
  EXPECT_FALSE(std::filesystem::exists(dir / "o.jsonl"));
}

TEST(CliBuildTest, ConfigFileAndFlagPrecedence) {
  TempDir dir;
  testutil::WriteFile(dir / "c.conf",
                      "min_summary_tokens = 0\nmode = centrum\n");
  CliRun r = Cli({"build", "--config", dir / "c.conf", "--input",
                  FixturePath("clusters_10.jsonl"), "--output", dir / "o.jsonl",
                  "--json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["clusters_retained"], 8);
  r = Cli({"build", "--config", dir / "c.conf", "--min-summary-tokens", "250",
           "--input", FixturePath("clusters_10.jsonl"), "--output",
           dir / "o.jsonl", "--json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["clusters_retained"], 7);
}

TEST(CliBuildTest, UnwritableOutputIsRuntimeFailure) {
  TempDir dir;
  const CliRun r = Cli({"build", "--input", FixturePath("clusters_10.jsonl"),
                        "--output", dir / "nope" / "o.jsonl"});
  EXPECT_EQ(r.status, kExitFailure);
}

TEST(CliSelectTest, MatchesOracleArgmax) {
  const auto rows = testutil::ReadJsonLines(FixturePath("clusters_10.jsonl"));
  for (const auto& row : rows) {
    if (row["documents"].size() < 3) continue;
    std::vector<std::string> docs;
    for (const auto& d : row["documents"]) docs.push_back(d["text"]);
    const oracle::Centroid want = oracle::SelectCentroid(docs, false);
    const CliRun r =
        Cli({"select", "--input", FixturePath("clusters_10.jsonl"),
             "--cluster-id", row["cluster_id"], "--raw", "--json"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["centroid_index"], want.index) << row["cluster_id"];
    for (std::size_t i = 0; i < docs.size(); ++i) {
      EXPECT_NEAR(j["documents"][i]["score"].get<double>(), want.scores[i],
                  1e-12);
    }
  }
}

TEST(CliSelectTest, WarnsAndFails) {
  CliRun r = Cli({"select", "--input", FixturePath("clusters_10.jsonl"),
                  "--cluster-id", "clusters_10-004"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_NE(r.out.find("centroid:"), std::string::npos);
  r = Cli({"select", "--input", FixturePath("clusters_10.jsonl"),
           "--cluster-id", "clusters_10-000"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.err.find("tokens"), std::string::npos);
  r = Cli({"select", "--input", FixturePath("clusters_10.jsonl"),
           "--cluster-id", "clusters_10-001"});
  EXPECT_EQ(r.status, kExitFailure);
  r = Cli({"select", "--input", FixturePath("clusters_10.jsonl"),
           "--cluster-id", "no-such-cluster"});
  EXPECT_EQ(r.status, kExitFailure);
  EXPECT_NE(r.err.find("not found"), std::string::npos);
}

TEST(CliEvalTest, TruncatedFixtureMatchesExpected) {
  TempDir dir;
  const CliRun r = Cli({"eval", "--pairs", FixturePath("eval_pairs_20.jsonl"),
                        "--truncate", "250", "--json", "--scores-out",
                        dir / "s.jsonl", "--report", dir / "r.json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto expected = nlohmann::json::parse(
      testutil::ReadFile(FixturePath("eval_expected_20.json")));
  const auto got = nlohmann::json::parse(r.out);
  for (const char* m : {"rouge1", "rouge2", "rougeL", "rougeLsum"}) {
    EXPECT_NEAR(got["aggregate"][m]["fmeasure"].get<double>(),
                expected["aggregate"][m][2].get<double>(), 1e-6);
  }
  EXPECT_EQ(got["truncate_to"], 250);
  EXPECT_EQ(testutil::ReadJsonLines(dir / "s.jsonl").size(), 20u);
  EXPECT_EQ(nlohmann::json::parse(testutil::ReadFile(dir / "r.json")), got);
}

TEST(CliEvalTest, IdenticalPairsAndUsageErrors) {
  TempDir dir;
  testutil::WriteFile(
      dir / "p.jsonl",
      "{\"id\": \"a\", \"system\": \"x y z\", \"reference\": \"x y z\"}\n");
  CliRun r = Cli({"eval", "--pairs", dir / "p.jsonl", "--json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_DOUBLE_EQ(
      nlohmann::json::parse(r.out)["aggregate"]["rougeL"]["fmeasure"]
          .get<double>(),
      1.0);
  r = Cli({"eval", "--pairs", dir / "p.jsonl", "--truncate", "5", "--truncate",
           "mean-ref"});
  EXPECT_EQ(r.status, kExitUsage);
  r = Cli({"eval", "--pairs", dir / "p.jsonl", "--truncate", "0"});
  EXPECT_EQ(r.status, kExitUsage);
  r = Cli({"eval", "--pairs", dir / "p.jsonl", "--multi-ref", "median"});
  EXPECT_EQ(r.status, kExitUsage);
}

TEST(CliScoreTest, IdenticalDisjointAndOracle) {
  TempDir dir;
  testutil::WriteFile(dir / "a.txt", "The storm hit the city.\nPower failed.");
  testutil::WriteFile(dir / "b.txt", "quantum chromodynamics lecture");
  CliRun r = Cli({"score", "--candidate", dir / "a.txt", "--reference",
                  dir / "a.txt", "--json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_DOUBLE_EQ(
      nlohmann::json::parse(r.out)["rouge2"]["fmeasure"].get<double>(), 1.0);
  r = Cli({"score", "--candidate", dir / "a.txt", "--reference", dir / "b.txt",
           "--json"});
  EXPECT_DOUBLE_EQ(
      nlohmann::json::parse(r.out)["rouge1"]["fmeasure"].get<double>(), 0.0);

  const auto pair =
      testutil::ReadJsonLines(FixturePath("eval_pairs_20.jsonl"))[0];
  testutil::WriteFile(dir / "sys.txt", pair["system"]);
  testutil::WriteFile(dir / "ref.txt", pair["reference"]);
  r = Cli({"score", "--candidate", dir / "sys.txt", "--reference",
           dir / "ref.txt", "--json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto c = oracle::Tokenize(pair["system"]);
  const auto ref = oracle::Tokenize(pair["reference"]);
  EXPECT_NEAR(j["rouge1"]["fmeasure"].get<double>(),
              oracle::RougeN(c, ref, 1).fmeasure, 1e-12);
  EXPECT_NEAR(j["rouge2"]["recall"].get<double>(),
              oracle::RougeN(c, ref, 2).recall, 1e-12);
  EXPECT_NEAR(j["rougeL"]["precision"].get<double>(),
              oracle::RougeL(c, ref).precision, 1e-12);
  EXPECT_NEAR(j["rougeLsum"]["fmeasure"].get<double>(),
              oracle::RougeLsum(oracle::TokenizeLines(pair["system"]),
                                oracle::TokenizeLines(pair["reference"]))
                  .fmeasure,
              1e-12);
  r = Cli({"score", "--candidate", dir / "missing.txt", "--reference",
           dir / "a.txt"});
  EXPECT_EQ(r.status, kExitUsage);
  r = Cli(
      {"score", "--candidate", dir / "a.txt", "--reference", dir / "a.txt"});
  EXPECT_NE(r.out.find("rougeLsum"), std::string::npos);
}

// The installed binary, not just the in-process entry point.
TEST(CliBinaryTest, ExitStatuses) {
  TempDir dir;
  const std::string bin = MDSCORPUS_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status(bin + " build --input " +
                   FixturePath("clusters_10.jsonl").string() + " --output " +
                   (dir / "o.jsonl").string()),
            0);
  EXPECT_EQ(status(bin + " build --output " + (dir / "o.jsonl").string()), 2);
  EXPECT_EQ(status(bin + " --help"), 0);
  EXPECT_EQ(testutil::ReadFile(dir / "o.jsonl"),
            testutil::ReadFile(GoldenPath("centrum_clusters_10.jsonl")));
}

}  // namespace
}  // namespace mdscorpus
