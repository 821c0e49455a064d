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

#include "oracle/oracle.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mdscorpus/text.h"

namespace oracle {
namespace {

Score FromCounts(double overlap, double candidate_total,
                 double reference_total) {
  Score s;
  s.precision = overlap / std::max(candidate_total, 1.0);
  s.recall = overlap / std::max(reference_total, 1.0);
  if (s.precision + s.recall > 0) {
    s.fmeasure = 2 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

std::vector<std::vector<std::size_t>> LcsTable(const Tokens& a,
                                               const Tokens& b) {
  std::vector<std::vector<std::size_t>> t(
      a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1
                                     : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t;
}

}  // namespace

Tokens Tokenize(const std::string& text) {
  return mdscorpus::TokenizeStems(text, /*stem=*/true);
}

std::vector<Tokens> TokenizeLines(const std::string& text) {
  std::vector<Tokens> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(Tokenize(line));
  }
  return lines;
}

Score RougeN(const Tokens& candidate, const Tokens& reference, int n) {
  auto grams = [n](const Tokens& t) {
    std::map<Tokens, int> counts;
    for (std::size_t i = 0; i + n <= t.size(); ++i) {
      ++counts[Tokens(t.begin() + i, t.begin() + i + n)];
    }
    return counts;
  };
  const auto c = grams(candidate);
  const auto r = grams(reference);
  int overlap = 0;
  int c_total = 0;
  int r_total = 0;
  for (const auto& [g, k] : c) c_total += k;
  for (const auto& [g, k] : r) {
    r_total += k;
    auto it = c.find(g);
    if (it != c.end()) overlap += std::min(k, it->second);
  }
  return FromCounts(overlap, c_total, r_total);
}

std::size_t LcsLength(const Tokens& a, const Tokens& b) {
  return LcsTable(a, b)[a.size()][b.size()];
}

std::size_t ExhaustiveLcsLength(const Tokens& a, const Tokens& b) {
  if (a.size() > 16) throw std::invalid_argument("sequence too long");
  std::size_t best = 0;
  for (unsigned mask = 0; mask < (1u << a.size()); ++mask) {
    const std::size_t size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    std::size_t j = 0;
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      while (j < b.size() && b[j] != a[i]) ++j;
      if (j == b.size()) ok = false;
      ++j;
    }
    if (ok) best = size;
  }
  return best;
}

Score RougeL(const Tokens& candidate, const Tokens& reference) {
  if (candidate.empty() || reference.empty()) return {};
  const double lcs = static_cast<double>(LcsLength(reference, candidate));
  Score s;
  s.precision = lcs / static_cast<double>(candidate.size());
  s.recall = lcs / static_cast<double>(reference.size());
  if (s.precision + s.recall > 0) {
    s.fmeasure = 2 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

Score RougeLsum(const std::vector<Tokens>& candidate,
                const std::vector<Tokens>& reference) {
  std::map<std::string, int> ref_counts;
  std::map<std::string, int> cand_counts;
  std::size_t m = 0;
  std::size_t n = 0;
  for (const Tokens& s : reference) {
    m += s.size();
    for (const auto& t : s) ++ref_counts[t];
  }
  for (const Tokens& s : candidate) {
    n += s.size();
    for (const auto& t : s) ++cand_counts[t];
  }
  if (m == 0 || n == 0) return {};
  std::size_t hits = 0;
  for (const Tokens& r : reference) {
    std::vector<bool> in_union(r.size(), false);
    for (const Tokens& c : candidate) {
      const auto t = LcsTable(r, c);
      std::size_t i = r.size();
      std::size_t j = c.size();
      while (i > 0 && j > 0) {
        if (r[i - 1] == c[j - 1]) {
          in_union[i - 1] = true;
          --i;
          --j;
        } else if (t[i][j - 1] > t[i - 1][j]) {
          --j;
        } else {
          --i;
        }
      }
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (in_union[i] && cand_counts[r[i]] > 0 && ref_counts[r[i]] > 0) {
        ++hits;
        --cand_counts[r[i]];
        --ref_counts[r[i]];
      }
    }
  }
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  const double r = static_cast<double>(hits) / static_cast<double>(m);
  Score s{p, r, 0.0};
  if (p + r > 0) s.fmeasure = 2 * p * r / (p + r);
  return s;
}

double Match(const std::string& x, const std::string& x_prime, bool recall) {
  const Tokens a = Tokenize(x);
  const Tokens b = Tokenize(x_prime);
  auto pick = [recall](const Score& s) {
    return recall ? s.recall : s.fmeasure;
  };
  return (pick(RougeN(a, b, 1)) + pick(RougeN(a, b, 2)) + pick(RougeL(a, b))) /
         3.0;
}

Centroid SelectCentroid(const std::vector<std::string>& docs, bool recall) {
  Centroid c;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < docs.size(); ++j) {
      if (j != i) sum += Match(docs[i], docs[j], recall);
    }
    c.scores.push_back(sum / static_cast<double>(docs.size()));
    if (c.scores.back() > c.scores[c.index]) c.index = i;
  }
  return c;
}

double Salience(const std::string& sentence, std::size_t own_doc,
                const std::vector<std::string>& docs) {
  double sum = 0.0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (d != own_doc) sum += Match(sentence, docs[d], false);
  }
  return docs.size() < 2 ? 0.0 : sum / static_cast<double>(docs.size() - 1);
}

}  // namespace oracle
