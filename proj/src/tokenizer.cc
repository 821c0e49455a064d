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

#include <string>
#include <string_view>
#include <vector>

#include "mdscorpus/text.h"
#include "mdscorpus/utf8.h"

namespace mdscorpus {
namespace {

constexpr char32_t kCapitalIWithDot = 0x0130;
constexpr char32_t kKelvinSign = 0x212A;

// Calls emit(surface) for every lowercase alphanumeric run.
template <typename Emit>
void ForEachSurface(std::string_view text, Emit&& emit) {
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      emit(current);
      current.clear();
    }
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (static_cast<unsigned char>(c) < 0x80) {
      if (c >= 'a' && c <= 'z') {
        current.push_back(c);
      } else if (c >= 'A' && c <= 'Z') {
        current.push_back(static_cast<char>(c - 'A' + 'a'));
      } else if (c >= '0' && c <= '9') {
        current.push_back(c);
      } else {
        flush();
      }
      ++pos;
      continue;
    }
    const utf8::Decoded d = utf8::DecodeAt(text, pos);
    pos += d.length;
    if (d.code_point == kKelvinSign) {
      current.push_back('k');
    } else if (d.code_point == kCapitalIWithDot) {
      // Lowercases to "i" + U+0307; the combining mark separates.
      current.push_back('i');
      flush();
    } else {
      flush();
    }
  }
  flush();
}

std::string MaybeStem(const std::string& surface, bool stem) {
  if (stem && surface.size() > 3) return PorterStem(surface);
  return surface;
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text, bool stem) {
  std::vector<Token> tokens;
  ForEachSurface(text, [&](const std::string& surface) {
    tokens.push_back(Token{surface, MaybeStem(surface, stem)});
  });
  return tokens;
}

std::vector<std::string> TokenizeStems(std::string_view text, bool stem) {
  std::vector<std::string> stems;
  ForEachSurface(text, [&](const std::string& surface) {
    stems.push_back(MaybeStem(surface, stem));
  });
  return stems;
}

std::size_t CountWhitespaceTokens(std::string_view text) {
  std::size_t count = 0;
  bool in_token = false;
  for (char c : text) {
    if (utf8::IsAsciiSpace(c)) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++count;
    }
  }
  return count;
}

}  // namespace mdscorpus
