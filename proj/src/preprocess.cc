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

#include "mdscorpus/preprocess.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "mdscorpus/errors.h"
#include "mdscorpus/sentence_splitter.h"
#include "mdscorpus/text.h"
#include "mdscorpus/utf8.h"
#include "resources.h"

namespace mdscorpus {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && utf8::IsAsciiSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && utf8::IsAsciiSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (utf8::IsAsciiSpace(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

struct Unit {
  Span span;
  std::size_t sentence = 0;
};

// Sentences split further at line breaks, trimmed, empty pieces dropped.
std::vector<Unit> CutUnits(std::string_view text,
                           const std::vector<Sentence>& sentences) {
  std::vector<Unit> units;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const Span span = sentences[s].span;
    std::size_t pos = span.begin;
    while (pos < span.end) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos || nl > span.end) nl = span.end;
      std::size_t b = pos;
      std::size_t e = nl;
      while (b < e && utf8::IsAsciiSpace(text[b])) ++b;
      while (e > b && utf8::IsAsciiSpace(text[e - 1])) --e;
      if (e > b) units.push_back(Unit{Span{b, e}, s});
      pos = nl + 1;
    }
  }
  return units;
}

int BreakWidth(std::string_view gap) {
  const auto newlines = std::count(gap.begin(), gap.end(), '\n');
  return newlines >= 2 ? 2 : static_cast<int>(newlines);
}

}  // namespace

std::vector<std::string> ParsePatternList(std::string_view contents) {
  std::vector<std::string> patterns;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!Trim(line).empty() && Trim(line).front() != '#') {
      patterns.emplace_back(line);
    }
    pos = nl + 1;
  }
  return patterns;
}

std::vector<std::string> DefaultBoilerplatePatterns() {
  return ParsePatternList(resources::kBoilerplatePatterns);
}

std::vector<std::string> ReadPatternFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read pattern file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParsePatternList(buffer.str());
}

struct BoilerplateCleaner::Result {
  std::string text;
  bool changed = false;
  // For each kept unit: original span and its offset in `text`.
  std::vector<std::pair<Span, std::size_t>> kept;
};

BoilerplateCleaner::BoilerplateCleaner(std::vector<std::string> patterns)
    : patterns_(std::move(patterns)) {
  compiled_.reserve(patterns_.size());
  for (const std::string& p : patterns_) {
    try {
      compiled_.emplace_back(
          p, std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
    } catch (const std::regex_error& e) {
      throw ConfigError("invalid boilerplate pattern '" + p + "': " + e.what());
    }
  }
}

bool BoilerplateCleaner::Matches(std::string_view unit) const {
  const std::string normalized = CollapseWhitespace(unit);
  for (const std::regex& re : compiled_) {
    if (std::regex_match(normalized, re)) return true;
  }
  return false;
}

BoilerplateCleaner::Result BoilerplateCleaner::CleanWithMap(
    std::string_view text) const {
  Result result;
  if (compiled_.empty()) {
    result.text = std::string(text);
    return result;
  }
  const std::vector<Sentence> sentences = SplitSentences(text);
  const std::vector<Unit> units = CutUnits(text, sentences);
  std::vector<bool> drop(units.size(), false);

  std::vector<bool> sentence_dropped(sentences.size(), false);
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    sentence_dropped[s] = Matches(sentences[s].text);
  }
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (sentence_dropped[units[i].sentence]) drop[i] = true;
  }
  auto slice = [&](Span s) { return text.substr(s.begin, s.size()); };
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (drop[i]) continue;
    if (Matches(slice(units[i].span))) {
      drop[i] = true;
    } else if (i + 1 < units.size() && !drop[i + 1] &&
               Matches(std::string(slice(units[i].span)) + " " +
                       std::string(slice(units[i + 1].span)))) {
      drop[i] = drop[i + 1] = true;
    }
  }
  if (std::find(drop.begin(), drop.end(), true) == drop.end()) {
    result.text = std::string(text);
    return result;
  }

  result.changed = true;
  int pending_break = -1;  // widest break since the last kept unit
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (i > 0) {
      const int width = BreakWidth(text.substr(
          units[i - 1].span.end, units[i].span.begin - units[i - 1].span.end));
      pending_break = std::max(pending_break, width);
    }
    if (drop[i]) continue;
    if (!result.kept.empty()) {
      result.text += pending_break == 2   ? "\n\n"
                     : pending_break == 1 ? "\n"
                                          : " ";
    }
    result.kept.emplace_back(units[i].span, result.text.size());
    result.text += slice(units[i].span);
    pending_break = -1;
  }
  return result;
}

std::string BoilerplateCleaner::Clean(std::string_view text) const {
  return CleanWithMap(text).text;
}

Document BoilerplateCleaner::Clean(const Document& doc) const {
  Result r = CleanWithMap(doc.text);
  if (!r.changed) return doc;
  Document out{doc.doc_id, std::move(r.text), std::nullopt};
  if (doc.entities) {
    std::vector<EntityAnnotation> remapped;
    for (const EntityAnnotation& e : *doc.entities) {
      for (const auto& [span, offset] : r.kept) {
        if (e.span.begin >= span.begin && e.span.end <= span.end) {
          const std::size_t begin = offset + (e.span.begin - span.begin);
          remapped.push_back(
              EntityAnnotation{e.surface, Span{begin, begin + e.span.size()}});
          break;
        }
      }
    }
    out.entities = std::move(remapped);
  }
  return out;
}

std::string CleanBoilerplate(std::string_view text,
                             const std::vector<std::string>& patterns) {
  return BoilerplateCleaner(patterns).Clean(text);
}

std::string TruncateTokens(std::string_view text, std::size_t max_tokens) {
  std::size_t tokens = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && utf8::IsAsciiSpace(text[pos])) ++pos;
    if (pos == text.size()) break;
    if (tokens == max_tokens) {
      // Another token follows; cut before the whitespace that precedes it.
      std::size_t end = pos;
      while (end > 0 && utf8::IsAsciiSpace(text[end - 1])) --end;
      return std::string(text.substr(0, end));
    }
    while (pos < text.size() && !utf8::IsAsciiSpace(text[pos])) ++pos;
    ++tokens;
  }
  return std::string(text);
}

Cluster ProportionalTruncate(const Cluster& cluster,
                             std::size_t max_source_tokens) {
  if (cluster.documents.empty()) return cluster;
  const std::size_t budget = max_source_tokens / cluster.size();
  Cluster out = cluster;
  for (Document& d : out.documents) {
    std::string cut = TruncateTokens(d.text, budget);
    if (cut.size() == d.text.size()) continue;
    if (d.entities) {
      std::erase_if(*d.entities, [&](const EntityAnnotation& e) {
        return e.span.end > cut.size();
      });
    }
    d.text = std::move(cut);
  }
  return out;
}

std::string_view RejectKindName(RejectKind kind) {
  switch (kind) {
    case RejectKind::kTooFewDocs:
      return "TooFewDocs";
    case RejectKind::kSummaryTooShort:
      return "SummaryTooShort";
    case RejectKind::kEmptyAfterCleaning:
      return "EmptyAfterCleaning";
    case RejectKind::kMalformedRecord:
      return "MalformedRecord";
  }
  return "Unknown";
}

std::string_view BuildModeName(BuildMode mode) {
  return mode == BuildMode::kPrimera ? "primera" : "centrum";
}

BuildMode ParseBuildMode(std::string_view name) {
  if (name == "centrum") return BuildMode::kCentrum;
  if (name == "primera") return BuildMode::kPrimera;
  throw ConfigError("mode must be 'centrum' or 'primera', got '" +
                    std::string(name) + "'");
}

std::optional<RejectReason> GateCluster(const Cluster& cluster,
                                        const GateConfig& config,
                                        const CentroidResult* centroid) {
  if (cluster.size() < config.min_docs) {
    return RejectReason{RejectKind::kTooFewDocs,
                        std::to_string(cluster.size()) + " documents, need " +
                            std::to_string(config.min_docs)};
  }
  if (config.mode != BuildMode::kCentrum) return std::nullopt;
  if (centroid == nullptr || centroid->centroid_index >= cluster.size()) {
    throw std::invalid_argument("centrum gate needs a centroid for cluster \"" +
                                cluster.cluster_id + "\"");
  }
  const std::size_t tokens =
      CountWhitespaceTokens(cluster.documents[centroid->centroid_index].text);
  if (tokens < config.min_summary_tokens) {
    return RejectReason{RejectKind::kSummaryTooShort,
                        "centroid has " + std::to_string(tokens) +
                            " tokens, need " +
                            std::to_string(config.min_summary_tokens)};
  }
  return std::nullopt;
}

}  // namespace mdscorpus
