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

// ROUGE tokenization and the whitespace token counter used by length gates.

#ifndef MDSCORPUS_TEXT_H_
#define MDSCORPUS_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mdscorpus {

struct Token {
  std::string surface;  // [a-z0-9]+
  std::string stem;     // == surface unless stemmed

  bool operator==(const Token&) const = default;
};

// Tokenizes the way the google-research rouge_score scorer does: lowercase,
// every maximal run of characters outside [a-z0-9] separates tokens, and
// tokens longer than three characters are Porter-stemmed when `stem` is set.
//
// Non-ASCII code points are separators. The two code points whose lowercase
// form contains an ASCII letter are mapped the same way Python's str.lower()
// maps them: U+0130 becomes "i" followed by a separator (combining dot), and
// U+212A (Kelvin sign) becomes "k".
std::vector<Token> Tokenize(std::string_view text, bool stem);

// Stems only; the hot path for profile construction.
std::vector<std::string> TokenizeStems(std::string_view text, bool stem);

// Number of maximal runs of non-whitespace bytes (ASCII whitespace).
std::size_t CountWhitespaceTokens(std::string_view text);

// Porter stemmer, bit-compatible with NLTK's PorterStemmer in its default
// NLTK_EXTENSIONS mode, which is what the reference ROUGE scorer uses.
// Expects a lowercase word.
std::string PorterStem(std::string_view word);

}  // namespace mdscorpus

#endif  // MDSCORPUS_TEXT_H_
