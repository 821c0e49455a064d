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

// Minimal UTF-8 helpers. File formats express offsets in Unicode code
// points; everything in memory uses byte offsets.

#ifndef MDSCORPUS_UTF8_H_
#define MDSCORPUS_UTF8_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace mdscorpus::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

struct Decoded {
  char32_t code_point;
  std::size_t length;  // bytes consumed, always >= 1
};

// Decodes the sequence starting at `pos`. Malformed input consumes one byte
// and yields kReplacement.
Decoded DecodeAt(std::string_view text, std::size_t pos);

// Number of code points in text[0, byte_offset).
std::size_t CodePointCount(std::string_view text, std::size_t byte_offset);
inline std::size_t CodePointCount(std::string_view text) {
  return CodePointCount(text, text.size());
}

// Byte offset of the code point with index `cp_offset`; text.size() when
// cp_offset equals the code point length. Returns npos when out of range.
std::size_t ByteOffset(std::string_view text, std::size_t cp_offset);

inline bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

}  // namespace mdscorpus::utf8

#endif  // MDSCORPUS_UTF8_H_
