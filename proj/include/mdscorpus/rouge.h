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

// ROUGE-1, ROUGE-2, ROUGE-L and ROUGE-Lsum, numerically identical to the
// google-research rouge_score package with use_stemmer=True.
//
// Scoring works on DocumentProfile objects so that a text is tokenized and
// counted once no matter how many pairs it takes part in.

#ifndef MDSCORPUS_ROUGE_H_
#define MDSCORPUS_ROUGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mdscorpus {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double fmeasure = 0.0;

  // fmeasure = 2pr / (p + r), or 0 when p + r == 0.
  static RougeScore FromPrecisionRecall(double precision, double recall);

  bool operator==(const RougeScore&) const = default;
};

struct ProfileOptions {
  bool stem = true;
  // ROUGE-Lsum sentence units. false: newline-delimited lines, as the
  // reference scorer does by default. true: SplitSentences().
  bool split_summaries = false;
};

struct PairHash {
  std::size_t operator()(const std::pair<std::string, std::string>& p) const;
};

using UnigramCounts = std::unordered_map<std::string, int>;
using BigramCounts =
    std::unordered_map<std::pair<std::string, std::string>, int, PairHash>;

// Tokens of one sequence plus a parallel hash column; the hashes only speed
// up inequality checks in the LCS inner loop.
struct TokenSequence {
  std::vector<std::string> stems;
  std::vector<std::uint64_t> hashes;

  std::size_t size() const { return stems.size(); }
  bool empty() const { return stems.empty(); }
  bool Equal(std::size_t i, const TokenSequence& other, std::size_t j) const {
    return hashes[i] == other.hashes[j] && stems[i] == other.stems[j];
  }
};

// Immutable after Build(); safe to share across threads.
class DocumentProfile {
 public:
  DocumentProfile() = default;

  static DocumentProfile Build(std::string_view text,
                               const ProfileOptions& options = {});

  const std::vector<std::string>& tokens() const { return tokens_.stems; }
  const TokenSequence& token_sequence() const { return tokens_; }
  const std::vector<TokenSequence>& sentences() const { return sentences_; }
  const UnigramCounts& unigrams() const { return unigrams_; }
  const BigramCounts& bigrams() const { return bigrams_; }

  std::size_t unigram_total() const { return tokens_.size(); }
  std::size_t bigram_total() const {
    return tokens_.size() > 0 ? tokens_.size() - 1 : 0;
  }
  bool empty() const { return tokens_.empty(); }

 private:
  TokenSequence tokens_;
  std::vector<TokenSequence> sentences_;
  UnigramCounts unigrams_;
  BigramCounts bigrams_;
};

// n must be 1 or 2; throws std::invalid_argument otherwise.
RougeScore RougeN(const DocumentProfile& candidate,
                  const DocumentProfile& reference, int n);

// Sequence-level LCS ("rougeL").
RougeScore RougeL(const DocumentProfile& candidate,
                  const DocumentProfile& reference);

// Summary-level union LCS ("rougeLsum").
RougeScore RougeLsum(const DocumentProfile& candidate,
                     const DocumentProfile& reference);

// Length of the longest common subsequence, two-row dynamic program.
std::size_t LcsLength(const TokenSequence& a, const TokenSequence& b);

// Indices into `reference` of one LCS with `candidate`, chosen by the same
// backtracking rule as the reference scorer.
std::vector<std::size_t> LcsIndices(const TokenSequence& reference,
                                    const TokenSequence& candidate);

enum class MatchBasis { kFMeasure, kRecall };

std::string_view MatchBasisName(MatchBasis basis);
// Accepts "fmeasure" and "recall"; throws ConfigError otherwise.
MatchBasis ParseMatchBasis(std::string_view name);

// Mean of ROUGE-1, ROUGE-2 and ROUGE-L of summary `x` against document
// `x_prime`, on f-measure or on recall.
struct MatchScore {
  double value = 0.0;
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
};

MatchScore ComputeMatchScore(const DocumentProfile& x,
                             const DocumentProfile& x_prime,
                             MatchBasis basis = MatchBasis::kFMeasure);

// Field-wise arithmetic mean. Throws std::invalid_argument("no scores to
// aggregate") on empty input.
RougeScore Aggregate(std::span<const RougeScore> scores);

// All four variants for one pair.
struct RougeSet {
  RougeScore rouge1;
  RougeScore rouge2;
  RougeScore rougeL;
  RougeScore rougeLsum;
};

RougeSet ScoreAll(const DocumentProfile& candidate,
                  const DocumentProfile& reference);

}  // namespace mdscorpus

#endif  // MDSCORPUS_ROUGE_H_
