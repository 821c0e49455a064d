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

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdscorpus/errors.h"
#include "oracle/oracle.h"
#include "test_util.h"

namespace mdscorpus {
namespace {

constexpr double kTolerance = 1e-6;

DocumentProfile P(const std::string& text) {
  return DocumentProfile::Build(text);
}

void ExpectScore(const RougeScore& got, const nlohmann::json& want,
                 const std::string& label) {
  EXPECT_NEAR(got.precision, want[0].get<double>(), kTolerance) << label;
  EXPECT_NEAR(got.recall, want[1].get<double>(), kTolerance) << label;
  EXPECT_NEAR(got.fmeasure, want[2].get<double>(), kTolerance) << label;
}

void ExpectOracle(const RougeScore& got, const oracle::Score& want) {
  EXPECT_DOUBLE_EQ(got.precision, want.precision);
  EXPECT_DOUBLE_EQ(got.recall, want.recall);
  EXPECT_DOUBLE_EQ(got.fmeasure, want.fmeasure);
}

TEST(ProfileTest, CountsNgrams) {
  const DocumentProfile p = DocumentProfile::Build("a b a", {.stem = false});
  EXPECT_EQ(p.unigrams().at("a"), 2);
  EXPECT_EQ(p.unigrams().at("b"), 1);
  EXPECT_EQ(p.bigrams().size(), 2u);
  EXPECT_EQ((p.bigrams().at({"a", "b"})), 1);
  EXPECT_EQ((p.bigrams().at({"b", "a"})), 1);
  EXPECT_EQ(p.unigram_total(), 3u);
  EXPECT_EQ(p.bigram_total(), 2u);
}

TEST(ProfileTest, EmptyText) {
  const DocumentProfile p = P("");
  EXPECT_TRUE(p.empty());
  EXPECT_TRUE(p.unigrams().empty());
  EXPECT_TRUE(p.bigrams().empty());
  EXPECT_TRUE(p.sentences().empty());
}

TEST(ProfileTest, NewsParagraphMatchesRecount) {
  const auto examples = nlohmann::json::parse(
      testutil::ReadFile(testutil::FixturePath("rouge_examples.json")));
  const std::string text = examples["news"]["reference"];
  const DocumentProfile p = P(text);
  const oracle::Tokens tokens = oracle::Tokenize(text);
  std::map<std::string, int> unigrams;
  std::map<std::pair<std::string, std::string>, int> bigrams;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    ++unigrams[tokens[i]];
    if (i + 1 < tokens.size()) ++bigrams[{tokens[i], tokens[i + 1]}];
  }
  EXPECT_EQ(p.unigrams().size(), unigrams.size());
  for (const auto& [t, n] : unigrams) EXPECT_EQ(p.unigrams().at(t), n);
  EXPECT_EQ(p.bigrams().size(), bigrams.size());
  for (const auto& [b, n] : bigrams) EXPECT_EQ(p.bigrams().at(b), n);
  int total = 0;
  for (const auto& [t, n] : p.unigrams()) total += n;
  EXPECT_EQ(static_cast<std::size_t>(total), p.tokens().size());
}

TEST(RougeTest, ReferenceScorerExamples) {
  const auto examples = nlohmann::json::parse(
      testutil::ReadFile(testutil::FixturePath("rouge_examples.json")));
  for (const auto& [name, ex] : examples.items()) {
    const DocumentProfile c = P(ex["candidate"]);
    const DocumentProfile r = P(ex["reference"]);
    ExpectScore(RougeN(c, r, 1), ex["rouge1"], name + " rouge1");
    ExpectScore(RougeN(c, r, 2), ex["rouge2"], name + " rouge2");
    ExpectScore(RougeL(c, r), ex["rougeL"], name + " rougeL");
    ExpectScore(RougeLsum(c, r), ex["rougeLsum"], name + " rougeLsum");
  }
}

TEST(RougeTest, CatSatVersusCatRan) {
  const RougeScore r1 = RougeN(P("the cat sat"), P("the cat ran"), 1);
  EXPECT_NEAR(r1.fmeasure, 2.0 / 3.0, 1e-12);
  const RougeScore r2 = RougeN(P("the cat sat"), P("the cat ran"), 2);
  EXPECT_NEAR(r2.fmeasure, 0.5, 1e-12);
}

TEST(RougeTest, IdenticalAndDisjoint) {
  const DocumentProfile a = P("The council voted on the budget.\nIt passed.");
  const DocumentProfile b = P("Storms flooded roads overnight");
  for (const RougeScore& s :
       {RougeN(a, a, 1), RougeN(a, a, 2), RougeL(a, a), RougeLsum(a, a)}) {
    EXPECT_EQ(s, (RougeScore{1.0, 1.0, 1.0}));
  }
  for (const RougeScore& s :
       {RougeN(a, b, 1), RougeN(a, b, 2), RougeL(a, b), RougeLsum(a, b)}) {
    EXPECT_EQ(s, RougeScore{});
  }
  EXPECT_EQ(ComputeMatchScore(a, a).value, 1.0);
  EXPECT_EQ(ComputeMatchScore(a, b).value, 0.0);
}

TEST(RougeTest, EmptySideScoresZero) {
  EXPECT_EQ(RougeN(P(""), P("a b"), 1), RougeScore{});
  EXPECT_EQ(RougeL(P("a b"), P("")), RougeScore{});
  EXPECT_EQ(RougeLsum(P(""), P("")), RougeScore{});
}

TEST(RougeTest, SubsequenceCandidate) {
  const RougeScore s =
      RougeL(P("storm hit city"), P("the storm hit the old city"));
  EXPECT_DOUBLE_EQ(s.precision, 1.0);
  EXPECT_DOUBLE_EQ(s.recall, 3.0 / 6.0);
}

TEST(RougeTest, LsumEqualsLOnSingleSentences) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const DocumentProfile c = P(testutil::RandomWords(rng, 1 + i % 25));
    const DocumentProfile r = P(testutil::RandomWords(rng, 1 + i % 31));
    EXPECT_EQ(RougeLsum(c, r), RougeL(c, r));
  }
}

TEST(RougeTest, RejectsUnsupportedOrder) {
  EXPECT_THROW(RougeN(P("a"), P("a"), 3), std::invalid_argument);
  EXPECT_THROW(RougeN(P("a"), P("a"), 0), std::invalid_argument);
}

TEST(RougeTest, ParityWithReferenceScorer) {
  const auto rows =
      testutil::ReadJsonLines(testutil::FixturePath("rouge_parity_200.jsonl"));
  ASSERT_EQ(rows.size(), 200u);
  for (const auto& row : rows) {
    const DocumentProfile c = P(row["candidate"]);
    const DocumentProfile r = P(row["reference"]);
    const std::string id = row["id"].dump();
    const RougeSet s = ScoreAll(c, r);
    ExpectScore(s.rouge1, row["expected"]["rouge1"], id);
    ExpectScore(s.rouge2, row["expected"]["rouge2"], id);
    ExpectScore(s.rougeL, row["expected"]["rougeL"], id);
    ExpectScore(s.rougeLsum, row["expected"]["rougeLsum"], id);
  }
}

TEST(RougePropertyTest, AgreesWithNaiveOracle) {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> len(0, 40);
  std::uniform_int_distribution<int> lines(1, 4);
  for (int iter = 0; iter < 500; ++iter) {
    std::string ctext;
    std::string rtext;
    for (int l = lines(rng); l > 0; --l)
      ctext += testutil::RandomWords(rng, len(rng)) + "\n";
    for (int l = lines(rng); l > 0; --l)
      rtext += testutil::RandomWords(rng, len(rng)) + "\n";
    const DocumentProfile c = P(ctext);
    const DocumentProfile r = P(rtext);
    const oracle::Tokens ct = oracle::Tokenize(ctext);
    const oracle::Tokens rt = oracle::Tokenize(rtext);
    ExpectOracle(RougeN(c, r, 1), oracle::RougeN(ct, rt, 1));
    ExpectOracle(RougeN(c, r, 2), oracle::RougeN(ct, rt, 2));
    ExpectOracle(RougeL(c, r), oracle::RougeL(ct, rt));
    ExpectOracle(RougeLsum(c, r),
                 oracle::RougeLsum(oracle::TokenizeLines(ctext),
                                   oracle::TokenizeLines(rtext)));
  }
}

TEST(RougePropertyTest, SymmetryAndBounds) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> len(0, 30);
  for (int iter = 0; iter < 500; ++iter) {
    const DocumentProfile a = P(testutil::RandomWords(rng, len(rng)));
    const DocumentProfile b = P(testutil::RandomWords(rng, len(rng)));
    for (int n : {1, 2}) {
      const RougeScore ab = RougeN(a, b, n);
      const RougeScore ba = RougeN(b, a, n);
      EXPECT_EQ(ab.precision, ba.recall);
      EXPECT_EQ(ab.recall, ba.precision);
      EXPECT_EQ(ab.fmeasure, ba.fmeasure);
      const double total_a = n == 1 ? a.unigram_total() : a.bigram_total();
      const double total_b = n == 1 ? b.unigram_total() : b.bigram_total();
      const double overlap = ab.precision * std::max(total_a, 1.0);
      EXPECT_LE(overlap, std::min(total_a, total_b) + 1e-9);
    }
    EXPECT_EQ(RougeL(a, b).fmeasure, RougeL(b, a).fmeasure);
    for (const RougeScore& s :
         {RougeN(a, b, 1), RougeL(a, b), RougeLsum(a, b)}) {
      EXPECT_GE(s.precision, 0.0);
      EXPECT_LE(s.precision, 1.0);
      EXPECT_GE(s.recall, 0.0);
      EXPECT_LE(s.recall, 1.0);
      EXPECT_GE(s.fmeasure, 0.0);
      EXPECT_LE(s.fmeasure, 1.0);
    }
    // A single token has no bigrams, so ROUGE-2 is 0 even against itself.
    if (a.bigram_total() > 0) EXPECT_EQ(ComputeMatchScore(a, a).value, 1.0);
  }
}

TEST(LcsTest, TwoRowEqualsExhaustiveOnShortSequences) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> len(0, 8);
  std::uniform_int_distribution<int> sym(0, 3);
  auto make = [&](int n) {
    std::string s;
    for (int i = 0; i < n; ++i)
      s += std::string(1, static_cast<char>('a' + sym(rng))) + " ";
    return s;
  };
  for (int iter = 0; iter < 3000; ++iter) {
    const std::string a = make(len(rng));
    const std::string b = make(len(rng));
    const DocumentProfile pa = P(a);
    const DocumentProfile pb = P(b);
    const std::size_t expected =
        oracle::ExhaustiveLcsLength(oracle::Tokenize(a), oracle::Tokenize(b));
    EXPECT_EQ(LcsLength(pa.token_sequence(), pb.token_sequence()), expected)
        << a << "|" << b;
    EXPECT_EQ(LcsLength(pb.token_sequence(), pa.token_sequence()), expected);
    EXPECT_EQ(LcsIndices(pa.token_sequence(), pb.token_sequence()).size(),
              expected);
  }
}

TEST(LcsTest, RandomThirtyTokenPairsMatchTextbookTable) {
  std::mt19937_64 rng(30);
  for (int iter = 0; iter < 200; ++iter) {
    const std::string a = testutil::RandomWords(rng, 30);
    const std::string b = testutil::RandomWords(rng, 30);
    EXPECT_EQ(LcsLength(P(a).token_sequence(), P(b).token_sequence()),
              oracle::LcsLength(oracle::Tokenize(a), oracle::Tokenize(b)));
  }
}

TEST(MatchScoreTest, MeanOfThreeFmeasures) {
  const auto examples = nlohmann::json::parse(
      testutil::ReadFile(testutil::FixturePath("rouge_examples.json")));
  const auto& ex = examples["news"];
  const MatchScore m =
      ComputeMatchScore(P(ex["candidate"]), P(ex["reference"]));
  const double expected =
      (ex["rouge1"][2].get<double>() + ex["rouge2"][2].get<double>() +
       ex["rougeL"][2].get<double>()) /
      3.0;
  EXPECT_NEAR(m.value, expected, kTolerance);
  EXPECT_DOUBLE_EQ(m.value, (m.rouge1 + m.rouge2 + m.rougeL) / 3.0);
}

TEST(MatchScoreTest, RecallBasis) {
  const MatchScore m =
      ComputeMatchScore(P("storm hit city"), P("the storm hit the old city"),
                        MatchBasis::kRecall);
  EXPECT_DOUBLE_EQ(m.rouge1, 0.5);
  EXPECT_DOUBLE_EQ(m.rouge2, 1.0 / 5.0);
  EXPECT_DOUBLE_EQ(m.rougeL, 0.5);
}

TEST(MatchBasisTest, ParseAndName) {
  EXPECT_EQ(ParseMatchBasis("recall"), MatchBasis::kRecall);
  EXPECT_EQ(MatchBasisName(ParseMatchBasis("fmeasure")), "fmeasure");
  EXPECT_THROW(ParseMatchBasis("f1"), ConfigError);
}

TEST(AggregateTest, Means) {
  const RougeScore s{0.2, 0.4, 0.3};
  EXPECT_EQ(Aggregate(std::vector<RougeScore>{s}), s);
  EXPECT_EQ(Aggregate(std::vector<RougeScore>{{1, 1, 1}, {0, 0, 0}}),
            (RougeScore{0.5, 0.5, 0.5}));
  const std::vector<RougeScore> five = {{0.1, 0.2, 0.3},
                                        {0.4, 0.5, 0.6},
                                        {0.7, 0.8, 0.9},
                                        {0.25, 0.5, 0.75},
                                        {0.0, 1.0, 0.5}};
  const RougeScore mean = Aggregate(five);
  EXPECT_NEAR(mean.precision, 1.45 / 5, 1e-12);
  EXPECT_NEAR(mean.recall, 3.0 / 5, 1e-12);
  EXPECT_NEAR(mean.fmeasure, 3.05 / 5, 1e-12);
}

TEST(AggregateTest, EmptyIsAnError) {
  try {
    Aggregate(std::vector<RougeScore>{});
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "no scores to aggregate");
  }
}

}  // namespace
}  // namespace mdscorpus
