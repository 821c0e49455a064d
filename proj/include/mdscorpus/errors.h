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

#ifndef MDSCORPUS_ERRORS_H_
#define MDSCORPUS_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdscorpus {

// Bad configuration: invalid pattern, out-of-range threshold, unknown key.
// The CLI maps this to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem failure: missing input, unwritable output, short write.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structurally invalid record in a line-delimited input file.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mdscorpus

#endif  // MDSCORPUS_ERRORS_H_
