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

// End-to-end corpus build: read clusters, clean, gate, truncate, build a
// training example per accepted cluster and account for every rejection.

#ifndef MDSCORPUS_PIPELINE_H_
#define MDSCORPUS_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mdscorpus/cluster.h"
#include "mdscorpus/corpus_io.h"
#include "mdscorpus/preprocess.h"
#include "mdscorpus/primera.h"
#include "mdscorpus/rouge.h"

namespace mdscorpus {

struct PipelineConfig {
  BuildMode mode = BuildMode::kCentrum;
  // Unset means 3 in centrum mode and 2 in primera mode.
  std::optional<std::size_t> min_docs_per_cluster;
  std::size_t min_summary_tokens = 250;
  std::size_t max_source_tokens = 4096;
  double primera_ratio = 0.30;
  MatchBasis match_basis = MatchBasis::kFMeasure;
  EntityProvider entity_provider = EntityProvider::kHeuristic;
  bool default_boilerplate = true;
  std::vector<std::string> extra_boilerplate;  // after the defaults
  std::string mask_token = std::string(kDefaultMaskToken);
  std::string separator = std::string(kDefaultSeparator);
  SeparatorStyle separator_style = SeparatorStyle::kBetween;
  std::uint64_t seed = 0;  // reserved; the pipeline is deterministic

  std::size_t EffectiveMinDocs() const;
  std::vector<std::string> BoilerplatePatterns() const;
  // Throws ConfigError on the first violated constraint.
  void Validate() const;
  nlohmann::json ToJson() const;
};

// Applies a `key = value` config file on top of `config`. Lines whose first
// non-blank character is '#' are comments. Keys mirror PipelineConfig;
// boilerplate_file paths resolve relative to the config file and
// boilerplate_pattern may repeat. Throws ConfigError on unknown keys or bad
// values, IoError when unreadable.
void ApplyConfigFile(const std::filesystem::path& path, PipelineConfig& config);
// Applies one setting; the same keys as the file format.
void ApplyConfigValue(std::string_view key, std::string_view value,
                      PipelineConfig& config,
                      const std::filesystem::path& base_dir = {});

// Bucketed counts with exact sum, min and max. Merge is associative.
class Histogram {
 public:
  explicit Histogram(std::size_t bucket_width = 1) : width_(bucket_width) {}

  void Add(std::size_t value);
  void Merge(const Histogram& other);

  std::size_t count() const { return count_; }
  std::uint64_t sum() const { return sum_; }
  nlohmann::json ToJson() const;

 private:
  std::size_t width_;
  std::map<std::size_t, std::size_t> buckets_;  // bucket start -> count
  std::size_t count_ = 0;
  std::uint64_t sum_ = 0;
  std::size_t min_ = 0;
  std::size_t max_ = 0;
};

struct RejectSample {
  std::size_t line_number = 0;
  std::string cluster_id;
  std::string detail;
};

struct RunReport {
  std::string input;
  std::size_t clusters_read = 0;
  std::size_t clusters_retained = 0;
  std::map<RejectKind, std::size_t> rejects_by_reason;
  std::map<RejectKind, std::vector<RejectSample>> reject_samples;
  Histogram docs_per_cluster{1};
  Histogram source_tokens{256};
  Histogram target_tokens{64};
  nlohmann::json config = nlohmann::json::object();
  double wall_seconds = 0.0;
  std::size_t workers = 1;

  static constexpr std::size_t kMaxSamplesPerReason = 5;

  std::size_t total_rejects() const;
  double retained_fraction() const;
  void Reject(RejectKind kind, RejectSample sample);

  // Timing figures live under "timing" so they can be dropped when
  // comparing runs.
  nlohmann::json ToJson(bool include_timing = true) const;
  std::string ToText() const;
};

// Outcome of one cluster.
struct ClusterOutcome {
  std::optional<TrainingExample> example;
  std::optional<RejectReason> reject;
  std::size_t docs = 0;           // after cleaning
  std::size_t source_tokens = 0;  // whitespace tokens over input documents
  std::size_t target_tokens = 0;
};

// Stateless apart from the compiled patterns; safe to share across threads.
class ClusterProcessor {
 public:
  // Validates the config; throws ConfigError.
  explicit ClusterProcessor(PipelineConfig config);

  ClusterOutcome Process(const Cluster& cluster) const;
  const PipelineConfig& config() const { return config_; }

 private:
  PipelineConfig config_;
  BoilerplateCleaner cleaner_;
};

struct RunOptions {
  std::size_t workers = 1;
  std::size_t batch_size = 256;  // clusters in flight per worker
};

// Streams `input` to `output`, writing accepted examples in input order.
// Malformed lines are counted and skipped. Throws IoError for unreadable
// input or unwritable output; no partial output file is left behind.
RunReport RunPipeline(const std::filesystem::path& input,
                      const std::filesystem::path& output,
                      const PipelineConfig& config,
                      const RunOptions& options = {});

}  // namespace mdscorpus

#endif  // MDSCORPUS_PIPELINE_H_
