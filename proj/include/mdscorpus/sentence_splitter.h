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

#ifndef MDSCORPUS_SENTENCE_SPLITTER_H_
#define MDSCORPUS_SENTENCE_SPLITTER_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace mdscorpus {

// Half-open byte range into a source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

struct Sentence {
  std::string text;  // == source.substr(span.begin, span.size())
  Span span;
};

// Deterministic rule-based splitter.
//
// A boundary follows '.', '!' or '?' (optionally followed by more terminal
// punctuation and closing quotes or brackets) when the next character is
// whitespace and the first character after the whitespace, past any opening
// quotes or brackets, is an uppercase letter or a digit. A period that ends
// a word on the abbreviation list is not a boundary. A blank line is always
// a boundary. Sentence spans exclude surrounding whitespace.
class SentenceSplitter {
 public:
  explicit SentenceSplitter(std::unordered_set<std::string> abbreviations);

  // Parses the abbreviation resource format: one lowercase entry per line,
  // '#' comments and blank lines ignored.
  static SentenceSplitter FromResource(std::string_view contents);
  static SentenceSplitter FromFile(const std::filesystem::path& path);

  // Built from data/abbreviations.txt, compiled into the library.
  static const SentenceSplitter& Default();

  std::vector<Sentence> Split(std::string_view text) const;

  bool IsAbbreviation(std::string_view word) const;

 private:
  std::unordered_set<std::string> abbreviations_;
};

// SentenceSplitter::Default().Split(text).
std::vector<Sentence> SplitSentences(std::string_view text);

}  // namespace mdscorpus

#endif  // MDSCORPUS_SENTENCE_SPLITTER_H_
