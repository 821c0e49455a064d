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

#include "mdscorpus/rouge.h"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdscorpus/errors.h"
#include "mdscorpus/sentence_splitter.h"
#include "mdscorpus/text.h"

namespace mdscorpus {
namespace {

TokenSequence MakeSequence(std::vector<std::string> stems) {
  TokenSequence seq;
  seq.hashes.reserve(stems.size());
  std::hash<std::string> hasher;
  for (const std::string& s : stems) seq.hashes.push_back(hasher(s));
  seq.stems = std::move(stems);
  return seq;
}

void Append(TokenSequence& into, const TokenSequence& from) {
  into.stems.insert(into.stems.end(), from.stems.begin(), from.stems.end());
  into.hashes.insert(into.hashes.end(), from.hashes.begin(), from.hashes.end());
}

// Division as in the reference scorer: an empty side counts as 1.
double Ratio(std::size_t hits, std::size_t total) {
  return static_cast<double>(hits) /
         static_cast<double>(std::max<std::size_t>(total, 1));
}

template <typename Counts>
std::size_t Overlap(const Counts& candidate, const Counts& reference) {
  std::size_t overlap = 0;
  for (const auto& [gram, ref_count] : reference) {
    auto it = candidate.find(gram);
    if (it != candidate.end()) overlap += std::min(ref_count, it->second);
  }
  return overlap;
}

}  // namespace

RougeScore RougeScore::FromPrecisionRecall(double precision, double recall) {
  RougeScore s;
  s.precision = precision;
  s.recall = recall;
  // Same operation order as the reference scorer, for bit-level parity.
  s.fmeasure = (precision + recall > 0)
                   ? 2 * precision * recall / (precision + recall)
                   : 0.0;
  return s;
}

std::size_t PairHash::operator()(
    const std::pair<std::string, std::string>& p) const {
  std::hash<std::string> h;
  return h(p.first) * 1000003u ^ h(p.second);
}

DocumentProfile DocumentProfile::Build(std::string_view text,
                                       const ProfileOptions& options) {
  DocumentProfile profile;
  if (options.split_summaries) {
    profile.tokens_ = MakeSequence(TokenizeStems(text, options.stem));
    for (const Sentence& s : SplitSentences(text)) {
      profile.sentences_.push_back(
          MakeSequence(TokenizeStems(s.text, options.stem)));
    }
  } else {
    // Newline is a token separator, so the per-line sequences concatenate
    // to the whole-text sequence.
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      if (nl > pos) {
        TokenSequence line = MakeSequence(
            TokenizeStems(text.substr(pos, nl - pos), options.stem));
        Append(profile.tokens_, line);
        if (!line.empty()) profile.sentences_.push_back(std::move(line));
      }
      pos = nl + 1;
    }
  }

  const std::vector<std::string>& stems = profile.tokens_.stems;
  for (std::size_t i = 0; i < stems.size(); ++i) {
    ++profile.unigrams_[stems[i]];
    if (i + 1 < stems.size()) ++profile.bigrams_[{stems[i], stems[i + 1]}];
  }
  return profile;
}

RougeScore RougeN(const DocumentProfile& candidate,
                  const DocumentProfile& reference, int n) {
  std::size_t overlap;
  std::size_t cand_total;
  std::size_t ref_total;
  if (n == 1) {
    overlap = Overlap(candidate.unigrams(), reference.unigrams());
    cand_total = candidate.unigram_total();
    ref_total = reference.unigram_total();
  } else if (n == 2) {
    overlap = Overlap(candidate.bigrams(), reference.bigrams());
    cand_total = candidate.bigram_total();
    ref_total = reference.bigram_total();
  } else {
    throw std::invalid_argument("ROUGE-N supports n = 1 or n = 2, got " +
                                std::to_string(n));
  }
  return RougeScore::FromPrecisionRecall(Ratio(overlap, cand_total),
                                         Ratio(overlap, ref_total));
}

std::size_t LcsLength(const TokenSequence& a, const TokenSequence& b) {
  const TokenSequence& rows = a.size() >= b.size() ? a : b;
  const TokenSequence& cols = a.size() >= b.size() ? b : a;
  if (cols.empty()) return 0;
  std::vector<std::uint32_t> prev(cols.size() + 1, 0);
  std::vector<std::uint32_t> curr(cols.size() + 1, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::uint64_t row_hash = rows.hashes[i];
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (row_hash == cols.hashes[j] && rows.stems[i] == cols.stems[j]) {
        curr[j + 1] = prev[j] + 1;
      } else {
        curr[j + 1] = std::max(prev[j + 1], curr[j]);
      }
    }
    std::swap(prev, curr);
  }
  return prev[cols.size()];
}

std::vector<std::size_t> LcsIndices(const TokenSequence& reference,
                                    const TokenSequence& candidate) {
  const std::size_t rows = reference.size();
  const std::size_t cols = candidate.size();
  const std::size_t width = cols + 1;
  std::vector<std::uint32_t> table((rows + 1) * width, 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return table[i * width + j];
  };
  for (std::size_t i = 1; i <= rows; ++i) {
    for (std::size_t j = 1; j <= cols; ++j) {
      if (reference.Equal(i - 1, candidate, j - 1)) {
        at(i, j) = at(i - 1, j - 1) + 1;
      } else {
        at(i, j) = std::max(at(i - 1, j), at(i, j - 1));
      }
    }
  }
  std::vector<std::size_t> indices;
  std::size_t i = rows;
  std::size_t j = cols;
  while (i > 0 && j > 0) {
    if (reference.Equal(i - 1, candidate, j - 1)) {
      indices.push_back(i - 1);
      --i;
      --j;
    } else if (at(i, j - 1) > at(i - 1, j)) {
      --j;
    } else {
      --i;
    }
  }
  std::reverse(indices.begin(), indices.end());
  return indices;
}

RougeScore RougeL(const DocumentProfile& candidate,
                  const DocumentProfile& reference) {
  if (candidate.empty() || reference.empty()) return {};
  const std::size_t lcs =
      LcsLength(reference.token_sequence(), candidate.token_sequence());
  return RougeScore::FromPrecisionRecall(
      static_cast<double>(lcs) / static_cast<double>(candidate.unigram_total()),
      static_cast<double>(lcs) /
          static_cast<double>(reference.unigram_total()));
}

RougeScore RougeLsum(const DocumentProfile& candidate,
                     const DocumentProfile& reference) {
  const auto& ref_sents = reference.sentences();
  const auto& cand_sents = candidate.sentences();
  std::size_t m = 0;
  std::size_t n = 0;
  for (const auto& s : ref_sents) m += s.size();
  for (const auto& s : cand_sents) n += s.size();
  if (m == 0 || n == 0) return {};

  // Remaining token budget on each side; a union-LCS token scores only
  // while both sides still hold an unused copy of it.
  std::unordered_map<std::string, int> ref_left;
  std::unordered_map<std::string, int> cand_left;
  for (const auto& s : ref_sents) {
    for (const auto& t : s.stems) ++ref_left[t];
  }
  for (const auto& s : cand_sents) {
    for (const auto& t : s.stems) ++cand_left[t];
  }

  std::size_t hits = 0;
  std::vector<char> in_union;
  for (const TokenSequence& r : ref_sents) {
    in_union.assign(r.size(), 0);
    for (const TokenSequence& c : cand_sents) {
      for (std::size_t idx : LcsIndices(r, c)) in_union[idx] = 1;
    }
    for (std::size_t idx = 0; idx < r.size(); ++idx) {
      if (!in_union[idx]) continue;
      const std::string& token = r.stems[idx];
      auto c_it = cand_left.find(token);
      auto r_it = ref_left.find(token);
      if (c_it != cand_left.end() && c_it->second > 0 &&
          r_it != ref_left.end() && r_it->second > 0) {
        ++hits;
        --c_it->second;
        --r_it->second;
      }
    }
  }
  return RougeScore::FromPrecisionRecall(
      static_cast<double>(hits) / static_cast<double>(n),
      static_cast<double>(hits) / static_cast<double>(m));
}

std::string_view MatchBasisName(MatchBasis basis) {
  return basis == MatchBasis::kRecall ? "recall" : "fmeasure";
}

MatchBasis ParseMatchBasis(std::string_view name) {
  if (name == "fmeasure") return MatchBasis::kFMeasure;
  if (name == "recall") return MatchBasis::kRecall;
  throw ConfigError("match basis must be 'fmeasure' or 'recall', got '" +
                    std::string(name) + "'");
}

MatchScore ComputeMatchScore(const DocumentProfile& x,
                             const DocumentProfile& x_prime, MatchBasis basis) {
  auto pick = [basis](const RougeScore& s) {
    return basis == MatchBasis::kRecall ? s.recall : s.fmeasure;
  };
  MatchScore m;
  m.rouge1 = pick(RougeN(x, x_prime, 1));
  m.rouge2 = pick(RougeN(x, x_prime, 2));
  m.rougeL = pick(RougeL(x, x_prime));
  m.value = (m.rouge1 + m.rouge2 + m.rougeL) / 3.0;
  return m;
}

RougeScore Aggregate(std::span<const RougeScore> scores) {
  if (scores.empty()) throw std::invalid_argument("no scores to aggregate");
  RougeScore sum;
  for (const RougeScore& s : scores) {
    sum.precision += s.precision;
    sum.recall += s.recall;
    sum.fmeasure += s.fmeasure;
  }
  const double count = static_cast<double>(scores.size());
  return RougeScore{sum.precision / count, sum.recall / count,
                    sum.fmeasure / count};
}

RougeSet ScoreAll(const DocumentProfile& candidate,
                  const DocumentProfile& reference) {
  return RougeSet{RougeN(candidate, reference, 1),
                  RougeN(candidate, reference, 2), RougeL(candidate, reference),
                  RougeLsum(candidate, reference)};
}

}  // namespace mdscorpus
