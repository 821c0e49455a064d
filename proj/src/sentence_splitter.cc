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

#include "mdscorpus/sentence_splitter.h"

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mdscorpus/errors.h"
#include "mdscorpus/utf8.h"
#include "resources.h"

namespace mdscorpus {
namespace {

bool IsTerminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsOpener(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == '(' || cp == '[' || cp == 0x201C ||
         cp == 0x2018 || cp == 0x00AB;
}

bool IsCloser(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == ')' || cp == ']' || cp == 0x201D ||
         cp == 0x2019 || cp == 0x00BB;
}

bool StartsSentence(char32_t cp) {
  if ((cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9')) return true;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return true;  // Latin-1
  if (cp >= 0x391 && cp <= 0x3A9) return true;              // Greek
  return cp >= 0x410 && cp <= 0x42F;                        // Cyrillic
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view Trim(std::string_view line) {
  while (!line.empty() && utf8::IsAsciiSpace(line.front())) {
    line.remove_prefix(1);
  }
  while (!line.empty() && utf8::IsAsciiSpace(line.back()))
    line.remove_suffix(1);
  return line;
}

}  // namespace

SentenceSplitter::SentenceSplitter(
    std::unordered_set<std::string> abbreviations)
    : abbreviations_(std::move(abbreviations)) {}

SentenceSplitter SentenceSplitter::FromResource(std::string_view contents) {
  std::unordered_set<std::string> entries;
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = Trim(contents.substr(pos, nl - pos));
    if (!line.empty() && line.front() != '#') entries.insert(AsciiLower(line));
    pos = nl + 1;
  }
  return SentenceSplitter(std::move(entries));
}

SentenceSplitter SentenceSplitter::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read abbreviation list " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return FromResource(buffer.str());
}

const SentenceSplitter& SentenceSplitter::Default() {
  static const SentenceSplitter splitter =
      FromResource(resources::kAbbreviations);
  return splitter;
}

bool SentenceSplitter::IsAbbreviation(std::string_view word) const {
  return abbreviations_.contains(AsciiLower(word));
}

std::vector<Sentence> SentenceSplitter::Split(std::string_view text) const {
  const std::size_t n = text.size();
  std::vector<std::size_t> cuts;

  std::size_t i = 0;
  while (i < n) {
    const char c = text[i];
    if (c == '\n') {
      std::size_t k = i + 1;
      while (k < n && (text[k] == ' ' || text[k] == '\t' || text[k] == '\r')) {
        ++k;
      }
      if (k < n && text[k] == '\n') {
        cuts.push_back(i);
        while (k < n && utf8::IsAsciiSpace(text[k])) ++k;
      }
      i = k;
      continue;
    }
    if (!IsTerminal(c)) {
      ++i;
      continue;
    }

    std::size_t j = i + 1;
    while (j < n && IsTerminal(text[j])) ++j;
    while (j < n) {
      const utf8::Decoded d = utf8::DecodeAt(text, j);
      if (!IsCloser(d.code_point)) break;
      j += d.length;
    }
    if (j >= n || !utf8::IsAsciiSpace(text[j])) {
      i = j;
      continue;
    }

    std::size_t k = j;
    while (k < n && utf8::IsAsciiSpace(text[k])) ++k;
    while (k < n) {
      const utf8::Decoded d = utf8::DecodeAt(text, k);
      if (!IsOpener(d.code_point)) break;
      k += d.length;
    }
    if (k >= n || !StartsSentence(utf8::DecodeAt(text, k).code_point)) {
      i = j;
      continue;
    }

    if (c == '.') {
      std::size_t word_begin = i;
      while (word_begin > 0 && !utf8::IsAsciiSpace(text[word_begin - 1])) {
        --word_begin;
      }
      while (word_begin < i) {
        const utf8::Decoded d = utf8::DecodeAt(text, word_begin);
        if (!IsOpener(d.code_point)) break;
        word_begin += d.length;
      }
      if (IsAbbreviation(text.substr(word_begin, i - word_begin))) {
        i = j;
        continue;
      }
    }
    cuts.push_back(j);
    i = j;
  }
  cuts.push_back(n);

  std::vector<Sentence> sentences;
  std::size_t begin = 0;
  for (std::size_t cut : cuts) {
    std::size_t b = begin;
    std::size_t e = cut;
    while (b < e && utf8::IsAsciiSpace(text[b])) ++b;
    while (e > b && utf8::IsAsciiSpace(text[e - 1])) --e;
    if (e > b) {
      sentences.push_back(
          Sentence{std::string(text.substr(b, e - b)), Span{b, e}});
    }
    begin = cut;
  }
  return sentences;
}

std::vector<Sentence> SplitSentences(std::string_view text) {
  return SentenceSplitter::Default().Split(text);
}

}  // namespace mdscorpus
