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

#include "mdscorpus/eval.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "mdscorpus/corpus_io.h"
#include "mdscorpus/errors.h"
#include "mdscorpus/text.h"
#include "mdscorpus/utf8.h"

namespace mdscorpus {
namespace {

using RougeField = RougeScore RougeSet::*;
constexpr RougeField kFields[] = {&RougeSet::rouge1, &RougeSet::rouge2,
                                  &RougeSet::rougeL, &RougeSet::rougeLsum};
constexpr const char* kFieldNames[] = {"rouge1", "rouge2", "rougeL",
                                       "rougeLsum"};

RougeSet CombineReferences(const std::vector<RougeSet>& per_reference,
                           MultiReference mode) {
  if (per_reference.size() == 1) return per_reference.front();
  RougeSet out;
  for (RougeField field : kFields) {
    if (mode == MultiReference::kBest) {
      const RougeScore* best = &(per_reference.front().*field);
      for (const RougeSet& s : per_reference) {
        if ((s.*field).fmeasure > best->fmeasure) best = &(s.*field);
      }
      out.*field = *best;
    } else {
      std::vector<RougeScore> column;
      for (const RougeSet& s : per_reference) column.push_back(s.*field);
      out.*field = Aggregate(column);
    }
  }
  return out;
}

std::string RequireString(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw std::invalid_argument(std::string("missing string field \"") + key +
                                "\"");
  }
  return it->get<std::string>();
}

EvalPair PairFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("record is not an object");
  EvalPair pair;
  pair.example_id = RequireString(j, "id");
  pair.system_summary = RequireString(j, "system");
  const bool single = j.contains("reference");
  const bool multi = j.contains("references");
  if (single == multi) {
    throw std::invalid_argument(
        "exactly one of \"reference\" and \"references\" is required");
  }
  if (single) {
    pair.references.push_back(RequireString(j, "reference"));
  } else {
    const nlohmann::json& refs = j["references"];
    if (!refs.is_array() || refs.empty()) {
      throw std::invalid_argument("\"references\" must be a non-empty array");
    }
    for (const nlohmann::json& r : refs) {
      if (!r.is_string()) {
        throw std::invalid_argument("\"references\" must hold strings");
      }
      pair.references.push_back(r.get<std::string>());
    }
  }
  return pair;
}

}  // namespace

std::string_view MultiReferenceName(MultiReference mode) {
  return mode == MultiReference::kMean ? "mean" : "best";
}

MultiReference ParseMultiReference(std::string_view name) {
  if (name == "best") return MultiReference::kBest;
  if (name == "mean") return MultiReference::kMean;
  throw ConfigError("multi-reference mode must be 'best' or 'mean', got '" +
                    std::string(name) + "'");
}

std::size_t MeanReferenceLength(std::span<const std::string> references) {
  if (references.empty()) {
    throw std::invalid_argument("mean reference length of an empty set");
  }
  std::size_t total = 0;
  for (const std::string& r : references) total += CountWhitespaceTokens(r);
  return static_cast<std::size_t>(std::lround(
      static_cast<double>(total) / static_cast<double>(references.size())));
}

std::string TruncateToLength(std::string_view text, std::size_t n) {
  if (n < 1) throw std::invalid_argument("truncation length must be >= 1");
  if (CountWhitespaceTokens(text) <= n) return std::string(text);
  std::string out;
  std::size_t tokens = 0;
  std::size_t pos = 0;
  while (tokens < n) {
    while (utf8::IsAsciiSpace(text[pos])) ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && !utf8::IsAsciiSpace(text[pos])) ++pos;
    if (tokens > 0) out.push_back(' ');
    out.append(text, start, pos - start);
    ++tokens;
  }
  return out;
}

nlohmann::json RougeSetToJson(const RougeSet& set) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < std::size(kFields); ++i) {
    const RougeScore& s = set.*kFields[i];
    j[kFieldNames[i]] = {{"precision", s.precision},
                         {"recall", s.recall},
                         {"fmeasure", s.fmeasure}};
  }
  return j;
}

EvalResult EvaluateRun(std::vector<EvalPair> pairs, const EvalConfig& config,
                       std::size_t workers) {
  if (pairs.empty()) throw std::invalid_argument("no pairs to evaluate");
  std::sort(pairs.begin(), pairs.end(),
            [](const EvalPair& a, const EvalPair& b) {
              return a.example_id < b.example_id;
            });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].references.empty()) {
      throw std::invalid_argument("pair \"" + pairs[i].example_id +
                                  "\" has no reference");
    }
    if (i > 0 && pairs[i].example_id == pairs[i - 1].example_id) {
      throw std::invalid_argument("duplicate pair id \"" + pairs[i].example_id +
                                  "\"");
    }
  }

  EvalResult result;
  result.multi_reference = config.multi_reference;
  if (config.length_rule == LengthRule::kExplicit) {
    if (config.truncate_to < 1) {
      throw std::invalid_argument("truncation length must be >= 1");
    }
    result.truncated_to = config.truncate_to;
  } else if (config.length_rule == LengthRule::kMeanReference) {
    std::vector<std::string> all;
    for (const EvalPair& p : pairs) {
      all.insert(all.end(), p.references.begin(), p.references.end());
    }
    result.truncated_to = std::max<std::size_t>(1, MeanReferenceLength(all));
  }

  const ProfileOptions profile{config.stem, config.split_summaries};
  result.per_pair.resize(pairs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < pairs.size(); i = next++) {
        const EvalPair& p = pairs[i];
        const std::string system =
            result.truncated_to
                ? TruncateToLength(p.system_summary, *result.truncated_to)
                : p.system_summary;
        const DocumentProfile candidate =
            DocumentProfile::Build(system, profile);
        std::vector<RougeSet> per_reference;
        for (const std::string& r : p.references) {
          per_reference.push_back(
              ScoreAll(candidate, DocumentProfile::Build(r, profile)));
        }
        result.per_pair[i] = PairResult{
            p.example_id,
            CombineReferences(per_reference, config.multi_reference)};
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(workers, 1, pairs.size());
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  for (RougeField field : kFields) {
    std::vector<RougeScore> column;
    column.reserve(result.per_pair.size());
    for (const PairResult& r : result.per_pair)
      column.push_back(r.scores.*field);
    result.aggregate.*field = Aggregate(column);
  }
  return result;
}

nlohmann::json EvalResult::ToJson() const {
  nlohmann::json j = {{"pairs", per_pair.size()},
                      {"multi_reference", MultiReferenceName(multi_reference)},
                      {"aggregate", RougeSetToJson(aggregate)}};
  j["truncate_to"] =
      truncated_to ? nlohmann::json(*truncated_to) : nlohmann::json();
  return j;
}

std::string EvalResult::PerPairJsonl() const {
  std::string out;
  for (const PairResult& r : per_pair) {
    nlohmann::json j = RougeSetToJson(r.scores);
    j["id"] = r.example_id;
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out.push_back('\n');
  }
  return out;
}

std::string FormatRougeTable(const RougeSet& set) {
  std::ostringstream out;
  out << std::left << std::setw(11) << "metric" << std::right << std::setw(11)
      << "precision" << std::setw(11) << "recall" << std::setw(11) << "fmeasure"
      << "\n";
  out << std::fixed << std::setprecision(6);
  for (std::size_t i = 0; i < std::size(kFields); ++i) {
    const RougeScore& s = set.*kFields[i];
    out << std::left << std::setw(11) << kFieldNames[i] << std::right
        << std::setw(11) << s.precision << std::setw(11) << s.recall
        << std::setw(11) << s.fmeasure << "\n";
  }
  return out.str();
}

std::string EvalResult::ToText() const {
  return "pairs: " + std::to_string(per_pair.size()) + "  truncate: " +
         (truncated_to ? std::to_string(*truncated_to) : "none") +
         "  references: " + std::string(MultiReferenceName(multi_reference)) +
         "\n" + FormatRougeTable(aggregate);
}

std::vector<EvalPair> ReadEvalPairs(const std::filesystem::path& path) {
  LineReader lines(path);
  std::vector<EvalPair> pairs;
  while (std::optional<std::string> line = lines.Next()) {
    if (line->find_first_not_of(" \t") == std::string::npos) continue;
    try {
      pairs.push_back(PairFromJson(nlohmann::json::parse(*line)));
    } catch (const std::exception& e) {
      throw FormatError(lines.line_number(), e.what());
    }
  }
  return pairs;
}

}  // namespace mdscorpus
