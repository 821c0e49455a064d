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

// Line-delimited JSON I/O for cluster records and training examples. Both
// schemas are versioned; see schemas/ in the repository.
//
// Readers are streaming: memory is bounded by the longest line, never by the
// file. Gzip input is detected and decompressed transparently. Writers go to
// a temporary file next to the destination and rename on Commit().

#ifndef MDSCORPUS_CORPUS_IO_H_
#define MDSCORPUS_CORPUS_IO_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mdscorpus/cluster.h"

namespace mdscorpus {

inline constexpr int kFormatVersion = 1;
inline constexpr std::string_view kDefaultSeparator = "<doc-sep>";

enum class SeparatorStyle {
  kBetween,   // d0 SEP d1 SEP d2
  kTrailing,  // d0 SEP d1 SEP d2 SEP
};

std::string_view SeparatorStyleName(SeparatorStyle style);
SeparatorStyle ParseSeparatorStyle(std::string_view name);

struct SerializeOptions {
  std::string separator = std::string(kDefaultSeparator);
  SeparatorStyle style = SeparatorStyle::kBetween;
};

struct TrainingExample {
  std::string example_id;
  std::string source;  // documents joined by `separator`
  std::string target;
  std::string separator = std::string(kDefaultSeparator);
  // Code point offsets of every separator occurrence in `source`, so a
  // trainer can place global attention on them.
  std::vector<std::size_t> separator_positions;
  nlohmann::json meta = nlohmann::json::object();

  bool operator==(const TrainingExample&) const = default;
};

// Joins `docs` with the separator and records its positions. Throws
// std::invalid_argument for an empty document list or when a document
// already contains the separator literal.
TrainingExample SerializeExample(std::span<const std::string> docs,
                                 std::string target,
                                 const SerializeOptions& options = {});

// Checks the separator invariant: positions are exactly the occurrences of
// the separator, and their count is consistent with `document_count` when it
// is given. Returns an error description, or nullopt when valid.
std::optional<std::string> CheckSeparators(
    const TrainingExample& example,
    std::optional<std::size_t> document_count = std::nullopt,
    SeparatorStyle style = SeparatorStyle::kBetween);

nlohmann::json ExampleToJson(const TrainingExample& example);
TrainingExample ExampleFromJson(const nlohmann::json& j);

nlohmann::json ClusterToJson(const Cluster& cluster);
// Throws std::invalid_argument describing the first structural problem.
Cluster ClusterFromJson(const nlohmann::json& j);

// Reads text lines from plain or gzip files.
class LineReader {
 public:
  // Throws IoError when the file cannot be opened.
  explicit LineReader(const std::filesystem::path& path);
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  // Next line without its terminator ("\n" or "\r\n"); nullopt at EOF.
  std::optional<std::string> Next();
  std::size_t line_number() const { return line_number_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::size_t line_number_ = 0;
};

// One parsed input line.
struct ClusterRecordResult {
  std::size_t line_number = 0;
  std::optional<Cluster> cluster;  // set on success
  std::string error;               // set on failure
};

class ClusterReader {
 public:
  explicit ClusterReader(const std::filesystem::path& path);

  // Skips blank lines. A malformed line yields a result with `error` set;
  // reading can continue afterwards.
  std::optional<ClusterRecordResult> Next();

 private:
  LineReader lines_;
};

// Convenience for tests and small files; throws FormatError on the first
// malformed line.
std::vector<Cluster> ReadAllClusters(const std::filesystem::path& path);

class ExampleReader {
 public:
  explicit ExampleReader(const std::filesystem::path& path);
  // Throws FormatError on a malformed line.
  std::optional<TrainingExample> Next();

 private:
  LineReader lines_;
};

std::vector<TrainingExample> ReadAllExamples(const std::filesystem::path& path);

// Writes one JSON object per line, UTF-8, LF endings. Data goes to a
// temporary sibling of `path`; Commit() flushes and renames it into place.
// Destruction without Commit() removes the temporary file.
class ExampleWriter {
 public:
  explicit ExampleWriter(std::filesystem::path path,
                         SerializeOptions options = {});
  ~ExampleWriter();
  ExampleWriter(const ExampleWriter&) = delete;
  ExampleWriter& operator=(const ExampleWriter&) = delete;

  // Validates the separator invariant, then appends. Throws IoError on a
  // failed write and std::invalid_argument on an invalid example.
  void Write(const TrainingExample& example);
  std::size_t Commit();
  std::size_t count() const { return count_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  SerializeOptions options_;
  std::size_t count_ = 0;
};

// Writes all examples and commits; returns the count.
std::size_t WriteExamples(const std::filesystem::path& path,
                          std::span<const TrainingExample> examples,
                          const SerializeOptions& options = {});

// Temporary sibling + rename for other text outputs (reports, scores).
void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view contents);

}  // namespace mdscorpus

#endif  // MDSCORPUS_CORPUS_IO_H_
