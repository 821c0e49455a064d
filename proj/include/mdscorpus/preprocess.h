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

// Cleaning, truncation and gating applied to every cluster before a
// training example is built from it.

#ifndef MDSCORPUS_PREPROCESS_H_
#define MDSCORPUS_PREPROCESS_H_

#include <cstddef>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "mdscorpus/centroid.h"
#include "mdscorpus/cluster.h"

namespace mdscorpus {

// Patterns from the embedded default list (data/boilerplate_patterns.txt).
std::vector<std::string> DefaultBoilerplatePatterns();

// Parses the pattern file format: one pattern per line, '#' comments and
// blank lines ignored. Throws IoError when the file cannot be read.
std::vector<std::string> ReadPatternFile(const std::string& path);
std::vector<std::string> ParsePatternList(std::string_view contents);

// Drops whole sentences that match a boilerplate pattern.
//
// Text is cut into units: sentences, further split at line breaks. A unit is
// dropped when some pattern matches it entirely (case-insensitive, internal
// whitespace collapsed), when it belongs to a sentence that matches entirely,
// or when it forms a full match together with the next unit. Text without any
// match is returned unchanged; otherwise kept units are rejoined with "\n\n",
// "\n" or " " depending on the widest original break between them.
class BoilerplateCleaner {
 public:
  // Throws ConfigError naming the first invalid pattern.
  explicit BoilerplateCleaner(std::vector<std::string> patterns);

  std::string Clean(std::string_view text) const;

  // Also remaps entity annotations onto the cleaned text; annotations inside
  // dropped units are removed.
  Document Clean(const Document& doc) const;

  const std::vector<std::string>& patterns() const { return patterns_; }

 private:
  struct Result;
  Result CleanWithMap(std::string_view text) const;
  bool Matches(std::string_view unit) const;

  std::vector<std::string> patterns_;
  std::vector<std::regex> compiled_;
};

std::string CleanBoilerplate(std::string_view text,
                             const std::vector<std::string>& patterns);

// Cuts `text` after its first `max_tokens` whitespace tokens, keeping the
// original bytes up to the end of the last kept token. Texts within budget
// are returned unchanged.
std::string TruncateTokens(std::string_view text, std::size_t max_tokens);

// Every document gets floor(max_source_tokens / |documents|) whitespace
// tokens. Slack from short documents is not handed to long ones.
// Annotations past the cut are dropped.
Cluster ProportionalTruncate(const Cluster& cluster,
                             std::size_t max_source_tokens);

enum class RejectKind {
  kTooFewDocs,
  kSummaryTooShort,
  kEmptyAfterCleaning,
  kMalformedRecord,
};

inline constexpr RejectKind kAllRejectKinds[] = {
    RejectKind::kTooFewDocs, RejectKind::kSummaryTooShort,
    RejectKind::kEmptyAfterCleaning, RejectKind::kMalformedRecord};

std::string_view RejectKindName(RejectKind kind);

struct RejectReason {
  RejectKind kind;
  std::string detail;
};

enum class BuildMode { kCentrum, kPrimera };

std::string_view BuildModeName(BuildMode mode);
// Throws ConfigError for anything but "centrum" or "primera".
BuildMode ParseBuildMode(std::string_view name);

struct GateConfig {
  BuildMode mode = BuildMode::kCentrum;
  std::size_t min_docs = 3;
  std::size_t min_summary_tokens = 250;
};

// First gate that fires, or nullopt to accept: TooFewDocs when the cluster
// has fewer than min_docs documents, then (centrum mode only) SummaryTooShort
// when the centroid document has fewer than min_summary_tokens whitespace
// tokens. `centroid` may be null in primera mode or when the size gate fires.
std::optional<RejectReason> GateCluster(const Cluster& cluster,
                                        const GateConfig& config,
                                        const CentroidResult* centroid);

}  // namespace mdscorpus

#endif  // MDSCORPUS_PREPROCESS_H_
