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

// Length-controlled ROUGE evaluation of system summaries.

#ifndef MDSCORPUS_EVAL_H_
#define MDSCORPUS_EVAL_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mdscorpus/rouge.h"

namespace mdscorpus {

struct EvalPair {
  std::string example_id;
  std::string system_summary;
  std::vector<std::string> references;  // at least one
};

enum class LengthRule {
  kNone,           // score system summaries as given
  kExplicit,       // truncate to EvalConfig::truncate_to tokens
  kMeanReference,  // truncate to the mean reference length of the run
};

enum class MultiReference {
  kBest,  // per metric, the reference with the highest f-measure
  kMean,  // field-wise mean over references
};

std::string_view MultiReferenceName(MultiReference mode);
// Throws ConfigError for anything but "best" or "mean".
MultiReference ParseMultiReference(std::string_view name);

struct EvalConfig {
  LengthRule length_rule = LengthRule::kNone;
  std::size_t truncate_to = 0;  // used by kExplicit, must be >= 1
  bool stem = true;
  MultiReference multi_reference = MultiReference::kBest;
  bool split_summaries = false;  // ROUGE-Lsum sentence units
};

// round(mean whitespace-token count). Throws std::invalid_argument on an
// empty list.
std::size_t MeanReferenceLength(std::span<const std::string> references);

// First n whitespace tokens joined by single spaces; texts of at most n
// tokens are returned unchanged. Throws std::invalid_argument for n < 1.
std::string TruncateToLength(std::string_view text, std::size_t n);

struct PairResult {
  std::string example_id;
  RougeSet scores;
};

struct EvalResult {
  std::vector<PairResult> per_pair;  // sorted by example_id
  RougeSet aggregate;
  std::optional<std::size_t> truncated_to;
  MultiReference multi_reference = MultiReference::kBest;

  nlohmann::json ToJson() const;
  // One JSON object per pair, one per line.
  std::string PerPairJsonl() const;
  std::string ToText() const;
};

// Truncates the system side only, scores every pair and averages in id
// order. Throws std::invalid_argument on an empty list, duplicate ids, a
// pair without references or an invalid truncation length.
EvalResult EvaluateRun(std::vector<EvalPair> pairs, const EvalConfig& config,
                       std::size_t workers = 1);

// Reads {"id", "system", "reference" | "references"} lines. Throws IoError
// or FormatError.
std::vector<EvalPair> ReadEvalPairs(const std::filesystem::path& path);

nlohmann::json RougeSetToJson(const RougeSet& set);
// Fixed-width precision/recall/f-measure table, one row per variant.
std::string FormatRougeTable(const RougeSet& set);

}  // namespace mdscorpus

#endif  // MDSCORPUS_EVAL_H_
