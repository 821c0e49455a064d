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

#include "mdscorpus/pipeline.h"

#include <gtest/gtest.h>
#include <zlib.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "mdscorpus/corpus_io.h"
#include "mdscorpus/errors.h"
#include "test_util.h"

namespace mdscorpus {
namespace {

using testutil::MakeCluster;
using testutil::TempDir;

std::string Line(const Cluster& c) { return ClusterToJson(c).dump() + "\n"; }

std::size_t Rejects(const RunReport& r, RejectKind kind) {
  auto it = r.rejects_by_reason.find(kind);
  return it == r.rejects_by_reason.end() ? 0 : it->second;
}

TEST(PipelineConfigTest, Defaults) {
  PipelineConfig config;
  EXPECT_EQ(config.EffectiveMinDocs(), 3u);
  EXPECT_EQ(config.min_summary_tokens, 250u);
  EXPECT_EQ(config.max_source_tokens, 4096u);
  EXPECT_DOUBLE_EQ(config.primera_ratio, 0.30);
  config.mode = BuildMode::kPrimera;
  EXPECT_EQ(config.EffectiveMinDocs(), 2u);
  EXPECT_EQ(config.BoilerplatePatterns().size(), 2u);
  EXPECT_NO_THROW(config.Validate());
}

TEST(PipelineConfigTest, ValidateRejectsOutOfRange) {
  PipelineConfig config;
  config.min_docs_per_cluster = 1;
  EXPECT_THROW(config.Validate(), ConfigError);
  config = {};
  config.primera_ratio = 0.0;
  EXPECT_THROW(config.Validate(), ConfigError);
  config = {};
  config.max_source_tokens = 0;
  EXPECT_THROW(config.Validate(), ConfigError);
  config = {};
  config.mask_token = "<doc-sep>";
  EXPECT_THROW(config.Validate(), ConfigError);
}

TEST(ConfigFileTest, AppliesKeysAndResolvesRelativePatternFiles) {
  TempDir dir;
  testutil::WriteFile(dir / "extra.txt", "# extra\nBreaking news:.*\n");
  testutil::WriteFile(dir / "run.conf",
                      "# build settings\n"
                      "mode = primera\n"
                      "min_docs_per_cluster = 4\n"
                      "min_summary_tokens=100\n"
                      "max_source_tokens = 2048\n"
                      "primera_ratio = 0.5\n"
                      "match_basis = recall\n"
                      "boilerplate_defaults = false\n"
                      "boilerplate_file = extra.txt\n"
                      "boilerplate_pattern = Click #1 here\n"
                      "mask_token = [MASK]\n"
                      "separator_style = trailing\n");
  PipelineConfig config;
  ApplyConfigFile(dir / "run.conf", config);
  EXPECT_EQ(config.mode, BuildMode::kPrimera);
  EXPECT_EQ(config.EffectiveMinDocs(), 4u);
  EXPECT_EQ(config.min_summary_tokens, 100u);
  EXPECT_EQ(config.max_source_tokens, 2048u);
  EXPECT_DOUBLE_EQ(config.primera_ratio, 0.5);
  EXPECT_EQ(config.match_basis, MatchBasis::kRecall);
  EXPECT_EQ(config.BoilerplatePatterns(),
            (std::vector<std::string>{"Breaking news:.*", "Click #1 here"}));
  EXPECT_EQ(config.mask_token, "[MASK]");
  EXPECT_EQ(config.separator_style, SeparatorStyle::kTrailing);
}

TEST(ConfigFileTest, Errors) {
  TempDir dir;
  PipelineConfig config;
  testutil::WriteFile(dir / "bad.conf", "colour = blue\n");
  EXPECT_THROW(ApplyConfigFile(dir / "bad.conf", config), ConfigError);
  testutil::WriteFile(dir / "bad2.conf", "min_summary_tokens = -3\n");
  EXPECT_THROW(ApplyConfigFile(dir / "bad2.conf", config), ConfigError);
  testutil::WriteFile(dir / "bad3.conf", "just words\n");
  EXPECT_THROW(ApplyConfigFile(dir / "bad3.conf", config), ConfigError);
  EXPECT_THROW(ApplyConfigFile(dir / "missing.conf", config), IoError);
}

TEST(ClusterProcessorTest, InvalidBoilerplatePatternFailsAtStartup) {
  PipelineConfig config;
  config.extra_boilerplate = {"(unclosed"};
  EXPECT_THROW(ClusterProcessor{config}, ConfigError);
}

TEST(ClusterProcessorTest, EmptyAfterCleaning) {
  const ClusterProcessor p{PipelineConfig{}};
  const Cluster c =
      MakeCluster("e", {"Sorry, this video isn't available any more.",
                        "Advertisement Story continues below.", "   "});
  const ClusterOutcome out = p.Process(c);
  ASSERT_TRUE(out.reject.has_value());
  EXPECT_EQ(out.reject->kind, RejectKind::kEmptyAfterCleaning);
}

TEST(ClusterProcessorTest, CleaningCanDropDocumentsBelowTheSizeGate) {
  const ClusterProcessor p{PipelineConfig{}};
  const Cluster c = MakeCluster(
      "e",
      {"Sorry, this video isn't available any more.", "One doc.", "Two doc."});
  EXPECT_EQ(p.Process(c).reject->kind, RejectKind::kTooFewDocs);
}

TEST(ClusterProcessorTest, SeparatorInsideDocumentIsMalformed) {
  const ClusterProcessor p{PipelineConfig{}};
  const Cluster c = MakeCluster("s", {"a <doc-sep> b", "c", "d"});
  EXPECT_EQ(p.Process(c).reject->kind, RejectKind::kMalformedRecord);
}

TEST(ClusterProcessorTest, CentroidNeverSeesBoilerplate) {
  std::mt19937_64 rng(5);
  PipelineConfig config;
  config.min_summary_tokens = 0;
  const ClusterProcessor p{config};
  const std::string noise = " Sorry, this video isn't available any more. ";
  const Cluster c = MakeCluster("b", {testutil::RandomSentences(rng, 5) + noise,
                                      noise + testutil::RandomSentences(rng, 4),
                                      testutil::RandomSentences(rng, 6)});
  const ClusterOutcome out = p.Process(c);
  ASSERT_TRUE(out.example.has_value());
  EXPECT_EQ(out.example->source.find("this video"), std::string::npos);
  EXPECT_EQ(out.example->target.find("this video"), std::string::npos);
}

TEST(RunPipelineTest, PlantedFixtureOutcomes) {
  TempDir dir;
  const RunReport r = RunPipeline(testutil::FixturePath("clusters_10.jsonl"),
                                  dir / "out.jsonl", PipelineConfig{});
  EXPECT_EQ(r.clusters_read, 10u);
  EXPECT_EQ(r.clusters_retained, 7u);
  EXPECT_EQ(Rejects(r, RejectKind::kTooFewDocs), 2u);
  EXPECT_EQ(Rejects(r, RejectKind::kSummaryTooShort), 1u);
  EXPECT_EQ(r.clusters_read, r.clusters_retained + r.total_rejects());
  EXPECT_DOUBLE_EQ(r.retained_fraction(), 0.7);
  EXPECT_EQ(ReadAllExamples(dir / "out.jsonl").size(), 7u);
  EXPECT_EQ(
      testutil::ReadFile(dir / "out.jsonl"),
      testutil::ReadFile(testutil::GoldenPath("centrum_clusters_10.jsonl")));
}

TEST(RunPipelineTest, PlantedOutcomesMatchPerCluster) {
  TempDir dir;
  const auto rows =
      testutil::ReadJsonLines(testutil::FixturePath("gates_50.jsonl"));
  const ClusterProcessor p{PipelineConfig{}};
  for (const auto& row : rows) {
    const ClusterOutcome out = p.Process(ClusterFromJson(row));
    const std::string planted = row["meta"]["planted"];
    const std::string got =
        out.reject ? std::string(RejectKindName(out.reject->kind)) : "Accept";
    EXPECT_EQ(got, planted) << row["cluster_id"];
  }
}

TEST(RunPipelineTest, EmptyInput) {
  TempDir dir;
  testutil::WriteFile(dir / "in.jsonl", "");
  const RunReport r =
      RunPipeline(dir / "in.jsonl", dir / "out.jsonl", PipelineConfig{});
  EXPECT_EQ(r.clusters_read, 0u);
  EXPECT_EQ(r.clusters_retained, 0u);
  EXPECT_EQ(r.retained_fraction(), 0.0);
  EXPECT_TRUE(std::filesystem::exists(dir / "out.jsonl"));
  EXPECT_EQ(std::filesystem::file_size(dir / "out.jsonl"), 0u);
}

TEST(RunPipelineTest, MalformedLinesAreCountedAndSkipped) {
  TempDir dir;
  std::mt19937_64 rng(3);
  std::vector<std::string> docs;
  for (int d = 0; d < 3; ++d) docs.push_back(testutil::RandomWords(rng, 300));
  testutil::WriteFile(dir / "in.jsonl", Line(MakeCluster("ok1", docs)) +
                                            "{not json\n" +
                                            "{\"cluster_id\": \"x\"}\n\n" +
                                            Line(MakeCluster("ok2", docs)));
  const RunReport r =
      RunPipeline(dir / "in.jsonl", dir / "out.jsonl", PipelineConfig{});
  EXPECT_EQ(r.clusters_read, 4u);
  EXPECT_EQ(r.clusters_retained, 2u);
  EXPECT_EQ(Rejects(r, RejectKind::kMalformedRecord), 2u);
  const auto samples = r.ToJson()["reject_samples"]["MalformedRecord"];
  ASSERT_EQ(samples.size(), 2u);
  EXPECT_EQ(samples[0]["line"], 2);
  EXPECT_EQ(samples[1]["line"], 3);
}

TEST(RunPipelineTest, GzipInput) {
  TempDir dir;
  const std::string plain =
      testutil::ReadFile(testutil::FixturePath("clusters_10.jsonl"));
  gzFile gz = gzopen((dir / "in.jsonl.gz").c_str(), "wb");
  ASSERT_NE(gz, nullptr);
  gzwrite(gz, plain.data(), static_cast<unsigned>(plain.size()));
  gzclose(gz);
  const RunReport r =
      RunPipeline(dir / "in.jsonl.gz", dir / "out.jsonl", PipelineConfig{});
  EXPECT_EQ(r.clusters_retained, 7u);
}

TEST(RunPipelineTest, WorkerCountDoesNotChangeBytes) {
  TempDir dir;
  PipelineConfig config;
  for (BuildMode mode : {BuildMode::kCentrum, BuildMode::kPrimera}) {
    config.mode = mode;
    const RunReport a = RunPipeline(testutil::FixturePath("gates_50.jsonl"),
                                    dir / "a.jsonl", config, {.workers = 1});
    const RunReport b =
        RunPipeline(testutil::FixturePath("gates_50.jsonl"), dir / "b.jsonl",
                    config, {.workers = 8, .batch_size = 3});
    EXPECT_EQ(testutil::ReadFile(dir / "a.jsonl"),
              testutil::ReadFile(dir / "b.jsonl"));
    EXPECT_EQ(a.ToJson(false), b.ToJson(false));
  }
}

TEST(RunPipelineTest, MissingInputAndUnwritableOutput) {
  TempDir dir;
  EXPECT_THROW(
      RunPipeline(dir / "nope.jsonl", dir / "out.jsonl", PipelineConfig{}),
      IoError);
  EXPECT_FALSE(std::filesystem::exists(dir / "out.jsonl"));
  EXPECT_THROW(RunPipeline(testutil::FixturePath("clusters_10.jsonl"),
                           dir / "no-such-dir" / "out.jsonl", PipelineConfig{}),
               IoError);
  std::size_t leftovers = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) {
    (void)e;
    ++leftovers;
  }
  EXPECT_EQ(leftovers, 0u);
}

TEST(RunReportTest, JsonShapeAndConservation) {
  TempDir dir;
  PipelineConfig config;
  config.mode = BuildMode::kPrimera;
  const RunReport r = RunPipeline(testutil::FixturePath("clusters_10.jsonl"),
                                  dir / "out.jsonl", config);
  const nlohmann::json j = r.ToJson();
  EXPECT_EQ(j["clusters_read"], 10);
  EXPECT_EQ(j["clusters_retained"], 9);
  std::size_t sum = 0;
  for (const auto& [k, v] : j["rejects_by_reason"].items())
    sum += v.get<std::size_t>();
  EXPECT_EQ(j["clusters_read"].get<std::size_t>(),
            j["clusters_retained"].get<std::size_t>() + sum);
  EXPECT_EQ(j["rejects_by_reason"].size(), 4u);
  EXPECT_EQ(j["config"]["mode"], "primera");
  EXPECT_EQ(j["config"]["min_docs_per_cluster"], 2);
  EXPECT_EQ(j["histograms"]["docs_per_cluster"]["count"], 9);
  EXPECT_TRUE(j.contains("timing"));
  EXPECT_FALSE(r.ToJson(false).contains("timing"));
  EXPECT_NE(r.ToText().find("clusters retained:  9"), std::string::npos);
  EXPECT_EQ(
      testutil::ReadFile(dir / "out.jsonl"),
      testutil::ReadFile(testutil::GoldenPath("primera_clusters_10.jsonl")));
}

TEST(HistogramTest, MergeIsAssociative) {
  Histogram a(10), b(10), c(10);
  for (std::size_t v : {1, 15, 22}) a.Add(v);
  for (std::size_t v : {3, 99}) b.Add(v);
  c.Add(40);
  Histogram left = a;
  left.Merge(b);
  left.Merge(c);
  Histogram bc = b;
  bc.Merge(c);
  Histogram right = a;
  right.Merge(bc);
  EXPECT_EQ(left.ToJson(), right.ToJson());
  EXPECT_EQ(left.count(), 6u);
  EXPECT_EQ(left.ToJson()["min"], 1);
  EXPECT_EQ(left.ToJson()["max"], 99);
}

}  // namespace
}  // namespace mdscorpus
