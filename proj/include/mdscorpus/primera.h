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

// Entity-pyramid masked-sentence synthetic summaries, the baseline the
// centroid objective is compared against.
//
//  1. Gather entity mentions per (document, sentence).
//  2. Rank entities by the number of documents mentioning them.
//  3. Put every sentence in the group of the highest-ranked entity it
//     mentions.
//  4. Walk the groups in rank order and take the sentence of each group that
//     best matches the other documents, until ceil(ratio * sentences) are
//     taken.
//  5. Replace the taken sentences with a mask token; their concatenation is
//     the summary.

#ifndef MDSCORPUS_PRIMERA_H_
#define MDSCORPUS_PRIMERA_H_

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mdscorpus/cluster.h"
#include "mdscorpus/corpus_io.h"
#include "mdscorpus/rouge.h"
#include "mdscorpus/sentence_splitter.h"

namespace mdscorpus {

inline constexpr std::string_view kDefaultMaskToken = "<sent-mask>";

enum class EntityProvider {
  kHeuristic,  // capitalized word spans
  kExternal,   // "entities" annotations carried by the input records
};

std::string_view EntityProviderName(EntityProvider provider);
EntityProvider ParseEntityProvider(std::string_view name);

struct SentenceRef {
  std::size_t doc_index = 0;
  std::size_t sentence_index = 0;

  auto operator<=>(const SentenceRef&) const = default;
};

struct EntityMention {
  std::string entity_key;  // heuristic: ASCII-lowercased; external: verbatim
  std::size_t doc_index = 0;
  std::size_t sentence_index = 0;

  bool operator==(const EntityMention&) const = default;
};

struct RankedEntity {
  std::string entity_key;
  std::size_t doc_frequency = 0;

  bool operator==(const RankedEntity&) const = default;
};

// Descending document frequency, ties by key.
using EntityRanking = std::vector<RankedEntity>;

// One group per ranked entity, same order; members sorted by position.
using SentenceGroup = std::vector<SentenceRef>;

// A cluster with every document split into sentences once.
struct SegmentedCluster {
  const Cluster* cluster = nullptr;
  std::vector<std::vector<Sentence>> sentences;  // [doc][sentence]

  static SegmentedCluster From(const Cluster& cluster);
  std::size_t total_sentences() const;
  const Sentence& at(SentenceRef ref) const {
    return sentences[ref.doc_index][ref.sentence_index];
  }
};

// Heuristic entities in one sentence: maximal runs of capitalized words.
// A run ends at a word carrying trailing punctuation. A single-word run at
// the start of the sentence is ignored because its capital carries no
// information, and a longer run there loses a leading function word such
// as "The" or "Then". The pronoun "I" is never an entity. Keys are lowercased
// and space-joined.
std::vector<std::string> HeuristicEntities(std::string_view sentence);

// Throws std::invalid_argument naming the cluster when the external
// provider is selected and a document has no annotations.
std::vector<EntityMention> ExtractEntities(const SegmentedCluster& segmented,
                                           EntityProvider provider);
std::vector<EntityMention> ExtractEntities(
    const Cluster& cluster,
    EntityProvider provider = EntityProvider::kHeuristic);

EntityRanking RankEntities(const std::vector<EntityMention>& mentions);

std::vector<SentenceGroup> GroupSentences(
    const std::vector<EntityMention>& mentions, const EntityRanking& ranking);
std::vector<SentenceGroup> GroupSentences(
    const Cluster& cluster, const EntityRanking& ranking,
    EntityProvider provider = EntityProvider::kHeuristic);

// Salience of one sentence: mean over every other document of
// ComputeMatchScore(sentence, document). Zero when there is no other
// document.
class SalienceScorer {
 public:
  SalienceScorer(const SegmentedCluster& segmented, MatchBasis basis,
                 ProfileOptions profile_options = {});

  double Score(SentenceRef ref) const;

  // Highest salience in `group`, ties to the smallest (doc, sentence).
  // Throws std::invalid_argument for an empty group.
  SentenceRef SelectSalient(const SentenceGroup& group) const;

 private:
  const SegmentedCluster& segmented_;
  MatchBasis basis_;
  ProfileOptions profile_options_;
  std::vector<DocumentProfile> documents_;
};

SentenceRef SelectSalient(const SentenceGroup& group, const Cluster& cluster,
                          MatchBasis basis = MatchBasis::kFMeasure);

struct SummarySentence {
  std::string text;
  std::size_t doc_index = 0;
  std::size_t sentence_index = 0;
};

struct SyntheticExample {
  std::vector<std::string> masked_documents;
  std::vector<SummarySentence> summary_sentences;  // selection order
  std::string mask_token = std::string(kDefaultMaskToken);
  std::size_t total_sentences = 0;
  std::size_t budget = 0;

  // Summary sentences joined by single spaces.
  std::string SummaryText() const;
};

struct PrimeraOptions {
  double ratio = 0.30;
  std::string mask_token = std::string(kDefaultMaskToken);
  EntityProvider provider = EntityProvider::kHeuristic;
  MatchBasis basis = MatchBasis::kFMeasure;
  ProfileOptions profile;
};

// ceil(ratio * total_sentences), robust to representation error in ratio.
std::size_t SummaryBudget(double ratio, std::size_t total_sentences);

// Throws std::invalid_argument for a ratio outside (0, 1], a cluster with no
// sentences, or a document that already contains the mask token.
SyntheticExample BuildPrimeraExample(const Cluster& cluster,
                                     const PrimeraOptions& options = {});

// Puts the summary sentences back in place of the mask tokens.
std::vector<std::string> RestoreMasked(const SyntheticExample& example);

TrainingExample PrimeraTrainingExample(const Cluster& cluster,
                                       const SyntheticExample& synthetic,
                                       const SerializeOptions& options = {});

}  // namespace mdscorpus

#endif  // MDSCORPUS_PRIMERA_H_
