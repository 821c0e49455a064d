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

#include "mdscorpus/primera.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "mdscorpus/errors.h"
#include "mdscorpus/utf8.h"

namespace mdscorpus {
namespace {

bool IsOpener(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == '(' || cp == '[' || cp == '{' ||
         cp == 0x201C || cp == 0x2018 || cp == 0x00AB;
}

bool IsTrailingPunct(char32_t cp) {
  switch (cp) {
    case '.':
    case ',':
    case ';':
    case ':':
    case '!':
    case '?':
    case '"':
    case '\'':
    case ')':
    case ']':
    case '}':
    case 0x201D:
    case 0x2019:
    case 0x00BB:
    case 0x2014:
    case 0x2026:
      return true;
    default:
      return false;
  }
}

bool IsCapital(char32_t cp) {
  return (cp >= 'A' && cp <= 'Z') || (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7);
}

// Code point ending at byte `end` (exclusive), and its byte length.
utf8::Decoded LastCodePoint(std::string_view s, std::size_t end) {
  std::size_t start = end - 1;
  while (start > 0 && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) {
    --start;
  }
  utf8::Decoded d = utf8::DecodeAt(s, start);
  if (start + d.length != end) return {utf8::kReplacement, 1};
  return d;
}

struct Word {
  std::string_view core;
  bool breaks_after = false;
};

Word CoreOf(std::string_view raw) {
  Word w;
  std::size_t b = 0;
  std::size_t e = raw.size();
  while (b < e) {
    const utf8::Decoded d = utf8::DecodeAt(raw, b);
    if (!IsOpener(d.code_point)) break;
    b += d.length;
  }
  while (e > b) {
    const utf8::Decoded d = LastCodePoint(raw, e);
    if (!IsTrailingPunct(d.code_point)) break;
    e -= d.length;
    w.breaks_after = true;
  }
  std::string_view core = raw.substr(b, e - b);
  for (std::string_view possessive :
       {std::string_view("'s"), std::string_view("\xE2\x80\x99s")}) {
    if (core.size() > possessive.size() && core.ends_with(possessive)) {
      core.remove_suffix(possessive.size());
      w.breaks_after = true;
      break;
    }
  }
  w.core = core;
  return w;
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Sentence containing byte offset `pos`, if any.
std::optional<std::size_t> SentenceAt(const std::vector<Sentence>& sentences,
                                      std::size_t pos) {
  auto it = std::upper_bound(
      sentences.begin(), sentences.end(), pos,
      [](std::size_t p, const Sentence& s) { return p < s.span.begin; });
  if (it == sentences.begin()) return std::nullopt;
  --it;
  if (pos < it->span.end) {
    return static_cast<std::size_t>(it - sentences.begin());
  }
  return std::nullopt;
}

}  // namespace

std::string_view EntityProviderName(EntityProvider provider) {
  return provider == EntityProvider::kExternal ? "external" : "heuristic";
}

EntityProvider ParseEntityProvider(std::string_view name) {
  if (name == "heuristic") return EntityProvider::kHeuristic;
  if (name == "external") return EntityProvider::kExternal;
  throw ConfigError("entity provider must be 'heuristic' or 'external', got '" +
                    std::string(name) + "'");
}

SegmentedCluster SegmentedCluster::From(const Cluster& cluster) {
  SegmentedCluster s;
  s.cluster = &cluster;
  s.sentences.reserve(cluster.size());
  for (const Document& d : cluster.documents) {
    s.sentences.push_back(SplitSentences(d.text));
  }
  return s;
}

std::size_t SegmentedCluster::total_sentences() const {
  std::size_t total = 0;
  for (const auto& doc : sentences) total += doc.size();
  return total;
}

namespace {

// Capitalized only because they open the sentence; stripped from the front
// of a run that starts there ("Then New Harbor flooded").
bool IsLeadingFunctionWord(std::string_view word) {
  static constexpr std::string_view kWords[] = {
      "a",         "after",     "also",    "an",     "and",   "as",    "at",
      "before",    "but",       "by",      "during", "for",   "from",  "he",
      "her",       "his",       "however", "if",     "in",    "it",    "its",
      "meanwhile", "my",        "of",      "on",     "our",   "she",   "so",
      "that",      "the",       "their",   "then",   "there", "these", "they",
      "this",      "those",     "to",      "today",  "we",    "when",  "while",
      "with",      "yesterday", "yet",     "you"};
  const std::string lower = AsciiLower(word);
  return std::find(std::begin(kWords), std::end(kWords), lower) !=
         std::end(kWords);
}

}  // namespace

std::vector<std::string> HeuristicEntities(std::string_view sentence) {
  std::vector<Word> words;
  std::size_t pos = 0;
  while (pos < sentence.size()) {
    while (pos < sentence.size() && utf8::IsAsciiSpace(sentence[pos])) ++pos;
    const std::size_t start = pos;
    while (pos < sentence.size() && !utf8::IsAsciiSpace(sentence[pos])) ++pos;
    if (pos > start) {
      Word w = CoreOf(sentence.substr(start, pos - start));
      if (!w.core.empty()) words.push_back(w);
    }
  }

  std::vector<std::string> entities;
  std::vector<std::string_view> run;
  std::size_t run_start = 0;
  auto flush = [&] {
    if (run_start == 0 && run.size() >= 2 && IsLeadingFunctionWord(run[0])) {
      run.erase(run.begin());
      run_start = 1;
    }
    if (!run.empty() && (run.size() >= 2 || run_start > 0)) {
      std::string key;
      for (std::size_t i = 0; i < run.size(); ++i) {
        if (i > 0) key.push_back(' ');
        key += AsciiLower(run[i]);
      }
      entities.push_back(std::move(key));
    }
    run.clear();
  };
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    const bool capital =
        IsCapital(utf8::DecodeAt(w.core, 0).code_point) && w.core != "I";
    if (!capital) {
      flush();
      continue;
    }
    if (run.empty()) run_start = i;
    run.push_back(w.core);
    if (w.breaks_after) flush();
  }
  flush();
  return entities;
}

std::vector<EntityMention> ExtractEntities(const SegmentedCluster& segmented,
                                           EntityProvider provider) {
  const Cluster& cluster = *segmented.cluster;
  std::vector<EntityMention> mentions;
  for (std::size_t d = 0; d < cluster.size(); ++d) {
    const Document& doc = cluster.documents[d];
    const std::vector<Sentence>& sentences = segmented.sentences[d];
    if (provider == EntityProvider::kHeuristic) {
      for (std::size_t s = 0; s < sentences.size(); ++s) {
        for (std::string& key : HeuristicEntities(sentences[s].text)) {
          mentions.push_back(EntityMention{std::move(key), d, s});
        }
      }
      continue;
    }
    if (!doc.entities) {
      throw std::invalid_argument("cluster \"" + cluster.cluster_id +
                                  "\": document \"" + doc.doc_id +
                                  "\" has no entity annotations");
    }
    for (const EntityAnnotation& e : *doc.entities) {
      if (auto s = SentenceAt(sentences, e.span.begin)) {
        mentions.push_back(EntityMention{e.surface, d, *s});
      }
    }
  }
  return mentions;
}

std::vector<EntityMention> ExtractEntities(const Cluster& cluster,
                                           EntityProvider provider) {
  return ExtractEntities(SegmentedCluster::From(cluster), provider);
}

EntityRanking RankEntities(const std::vector<EntityMention>& mentions) {
  std::map<std::string, std::set<std::size_t>> docs_by_entity;
  for (const EntityMention& m : mentions) {
    docs_by_entity[m.entity_key].insert(m.doc_index);
  }
  EntityRanking ranking;
  ranking.reserve(docs_by_entity.size());
  for (const auto& [key, docs] : docs_by_entity) {
    ranking.push_back(RankedEntity{key, docs.size()});
  }
  // std::map iteration is already key-ordered, so a stable sort on
  // frequency leaves ties in lexicographic order.
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const RankedEntity& a, const RankedEntity& b) {
                     return a.doc_frequency > b.doc_frequency;
                   });
  return ranking;
}

std::vector<SentenceGroup> GroupSentences(
    const std::vector<EntityMention>& mentions, const EntityRanking& ranking) {
  std::unordered_map<std::string, std::size_t> rank_of;
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    rank_of.emplace(ranking[r].entity_key, r);
  }
  std::map<SentenceRef, std::size_t> best_rank;
  for (const EntityMention& m : mentions) {
    auto it = rank_of.find(m.entity_key);
    if (it == rank_of.end()) continue;
    const SentenceRef ref{m.doc_index, m.sentence_index};
    auto [slot, inserted] = best_rank.emplace(ref, it->second);
    if (!inserted) slot->second = std::min(slot->second, it->second);
  }
  std::vector<SentenceGroup> groups(ranking.size());
  for (const auto& [ref, rank] : best_rank) groups[rank].push_back(ref);
  return groups;
}

std::vector<SentenceGroup> GroupSentences(const Cluster& cluster,
                                          const EntityRanking& ranking,
                                          EntityProvider provider) {
  return GroupSentences(ExtractEntities(cluster, provider), ranking);
}

SalienceScorer::SalienceScorer(const SegmentedCluster& segmented,
                               MatchBasis basis, ProfileOptions profile_options)
    : segmented_(segmented), basis_(basis), profile_options_(profile_options) {
  documents_.reserve(segmented.cluster->size());
  for (const Document& d : segmented.cluster->documents) {
    documents_.push_back(DocumentProfile::Build(d.text, profile_options_));
  }
}

double SalienceScorer::Score(SentenceRef ref) const {
  if (documents_.size() < 2) return 0.0;
  const DocumentProfile sentence =
      DocumentProfile::Build(segmented_.at(ref).text, profile_options_);
  double sum = 0.0;
  for (std::size_t d = 0; d < documents_.size(); ++d) {
    if (d == ref.doc_index) continue;
    sum += ComputeMatchScore(sentence, documents_[d], basis_).value;
  }
  return sum / static_cast<double>(documents_.size() - 1);
}

SentenceRef SalienceScorer::SelectSalient(const SentenceGroup& group) const {
  if (group.empty()) {
    throw std::invalid_argument("cannot select from an empty sentence group");
  }
  SentenceRef best = group.front();
  double best_score = Score(best);
  for (std::size_t i = 1; i < group.size(); ++i) {
    const double score = Score(group[i]);
    if (score > best_score || (score == best_score && group[i] < best)) {
      best = group[i];
      best_score = score;
    }
  }
  return best;
}

SentenceRef SelectSalient(const SentenceGroup& group, const Cluster& cluster,
                          MatchBasis basis) {
  const SegmentedCluster segmented = SegmentedCluster::From(cluster);
  return SalienceScorer(segmented, basis).SelectSalient(group);
}

std::string SyntheticExample::SummaryText() const {
  std::string text;
  for (std::size_t i = 0; i < summary_sentences.size(); ++i) {
    if (i > 0) text.push_back(' ');
    text += summary_sentences[i].text;
  }
  return text;
}

std::size_t SummaryBudget(double ratio, std::size_t total_sentences) {
  const double exact = ratio * static_cast<double>(total_sentences);
  // 0.7 * 10 is 7.000000000000001 in binary; do not round that up to 8.
  const double budget = std::ceil(exact - 1e-9 * std::max(1.0, exact));
  return static_cast<std::size_t>(std::max(0.0, budget));
}

SyntheticExample BuildPrimeraExample(const Cluster& cluster,
                                     const PrimeraOptions& options) {
  if (!(options.ratio > 0.0 && options.ratio <= 1.0)) {
    throw std::invalid_argument("summary ratio must be in (0, 1]");
  }
  if (options.mask_token.empty()) {
    throw std::invalid_argument("mask token must not be empty");
  }
  for (const Document& d : cluster.documents) {
    if (d.text.find(options.mask_token) != std::string::npos) {
      throw std::invalid_argument("document \"" + d.doc_id +
                                  "\" already contains the mask token");
    }
  }
  const SegmentedCluster segmented = SegmentedCluster::From(cluster);
  const std::size_t total = segmented.total_sentences();
  if (total == 0) {
    throw std::invalid_argument("cluster \"" + cluster.cluster_id +
                                "\" has no sentences");
  }

  const std::vector<EntityMention> mentions =
      ExtractEntities(segmented, options.provider);
  const EntityRanking ranking = RankEntities(mentions);
  const std::vector<SentenceGroup> groups = GroupSentences(mentions, ranking);
  const SalienceScorer scorer(segmented, options.basis, options.profile);

  SyntheticExample out;
  out.mask_token = options.mask_token;
  out.total_sentences = total;
  out.budget = SummaryBudget(options.ratio, total);

  std::set<SentenceRef> selected;
  std::vector<SentenceRef> order;
  for (const SentenceGroup& group : groups) {
    if (order.size() >= out.budget) break;
    SentenceGroup candidates;
    for (const SentenceRef& ref : group) {
      if (!selected.contains(ref)) candidates.push_back(ref);
    }
    if (candidates.empty()) continue;
    const SentenceRef pick = scorer.SelectSalient(candidates);
    selected.insert(pick);
    order.push_back(pick);
  }

  for (const SentenceRef& ref : order) {
    out.summary_sentences.push_back(SummarySentence{
        segmented.at(ref).text, ref.doc_index, ref.sentence_index});
  }

  out.masked_documents.reserve(cluster.size());
  for (std::size_t d = 0; d < cluster.size(); ++d) {
    std::string text = cluster.documents[d].text;
    // Back to front so earlier spans stay valid.
    for (auto it = selected.rbegin(); it != selected.rend(); ++it) {
      if (it->doc_index != d) continue;
      const Span& span = segmented.at(*it).span;
      text.replace(span.begin, span.size(), options.mask_token);
    }
    out.masked_documents.push_back(std::move(text));
  }
  return out;
}

std::vector<std::string> RestoreMasked(const SyntheticExample& example) {
  std::vector<std::vector<const SummarySentence*>> by_doc(
      example.masked_documents.size());
  for (const SummarySentence& s : example.summary_sentences) {
    if (s.doc_index >= by_doc.size()) {
      throw std::invalid_argument(
          "summary sentence refers to a missing document");
    }
    by_doc[s.doc_index].push_back(&s);
  }
  std::vector<std::string> restored;
  restored.reserve(by_doc.size());
  for (std::size_t d = 0; d < by_doc.size(); ++d) {
    auto& sentences = by_doc[d];
    std::sort(sentences.begin(), sentences.end(),
              [](const SummarySentence* a, const SummarySentence* b) {
                return a->sentence_index < b->sentence_index;
              });
    const std::string& masked = example.masked_documents[d];
    std::string text;
    std::size_t pos = 0;
    for (const SummarySentence* s : sentences) {
      const std::size_t at = masked.find(example.mask_token, pos);
      if (at == std::string::npos) {
        throw std::invalid_argument("fewer mask tokens than summary sentences");
      }
      text.append(masked, pos, at - pos);
      text += s->text;
      pos = at + example.mask_token.size();
    }
    text.append(masked, pos, std::string::npos);
    restored.push_back(std::move(text));
  }
  return restored;
}

TrainingExample PrimeraTrainingExample(const Cluster& cluster,
                                       const SyntheticExample& synthetic,
                                       const SerializeOptions& options) {
  TrainingExample ex = SerializeExample(synthetic.masked_documents,
                                        synthetic.SummaryText(), options);
  ex.example_id = cluster.cluster_id;
  nlohmann::json selected = nlohmann::json::array();
  for (const SummarySentence& s : synthetic.summary_sentences) {
    selected.push_back({s.doc_index, s.sentence_index});
  }
  ex.meta = {{"mode", "primera"},
             {"mask_token", synthetic.mask_token},
             {"masked_sentences", synthetic.summary_sentences.size()},
             {"total_sentences", synthetic.total_sentences},
             {"budget", synthetic.budget},
             {"selected", std::move(selected)},
             {"num_input_documents", synthetic.masked_documents.size()}};
  return ex;
}

}  // namespace mdscorpus
