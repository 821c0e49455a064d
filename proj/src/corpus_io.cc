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

#include "mdscorpus/corpus_io.h"

#include <unistd.h>
#include <zlib.h>

#include <atomic>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <set>
#include <stdexcept>
#include <system_error>
#include <utility>

#include "mdscorpus/errors.h"
#include "mdscorpus/utf8.h"

namespace mdscorpus {
namespace {

using nlohmann::json;

std::string Dump(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

const json& Require(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw std::invalid_argument(std::string(what) + " is missing field \"" +
                                key + "\"");
  }
  return *it;
}

std::string RequireString(const json& j, const char* key, const char* what) {
  const json& v = Require(j, key, what);
  if (!v.is_string()) {
    throw std::invalid_argument(std::string(what) + " field \"" + key +
                                "\" must be a string");
  }
  return v.get<std::string>();
}

void CheckFormatVersion(const json& j) {
  auto it = j.find("format_version");
  if (it == j.end()) return;
  if (!it->is_number_integer() || it->get<int>() != kFormatVersion) {
    throw std::invalid_argument("unsupported format_version " + it->dump());
  }
}

std::filesystem::path TempSibling(const std::filesystem::path& path) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." +
         std::to_string(counter.fetch_add(1));
  return tmp;
}

std::size_t CountOccurrences(std::string_view haystack,
                             std::string_view needle) {
  if (needle.empty()) return 0;
  std::size_t count = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

std::string_view SeparatorStyleName(SeparatorStyle style) {
  return style == SeparatorStyle::kTrailing ? "trailing" : "between";
}

SeparatorStyle ParseSeparatorStyle(std::string_view name) {
  if (name == "between") return SeparatorStyle::kBetween;
  if (name == "trailing") return SeparatorStyle::kTrailing;
  throw ConfigError("separator style must be 'between' or 'trailing', got '" +
                    std::string(name) + "'");
}

TrainingExample SerializeExample(std::span<const std::string> docs,
                                 std::string target,
                                 const SerializeOptions& options) {
  if (docs.empty()) {
    throw std::invalid_argument("cannot serialize an empty document list");
  }
  if (options.separator.empty()) {
    throw std::invalid_argument("separator must not be empty");
  }
  TrainingExample ex;
  ex.separator = options.separator;
  ex.target = std::move(target);
  std::size_t code_points = 0;
  const std::size_t separator_cps = utf8::CodePointCount(options.separator);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (docs[i].find(options.separator) != std::string::npos) {
      throw std::invalid_argument("document " + std::to_string(i) +
                                  " contains the separator literal");
    }
    ex.source += docs[i];
    code_points += utf8::CodePointCount(docs[i]);
    const bool last = i + 1 == docs.size();
    if (!last || options.style == SeparatorStyle::kTrailing) {
      ex.separator_positions.push_back(code_points);
      ex.source += options.separator;
      code_points += separator_cps;
    }
  }
  return ex;
}

std::optional<std::string> CheckSeparators(
    const TrainingExample& example, std::optional<std::size_t> document_count,
    SeparatorStyle style) {
  const std::string_view source = example.source;
  const std::size_t occurrences = CountOccurrences(source, example.separator);
  if (occurrences != example.separator_positions.size()) {
    return "source holds " + std::to_string(occurrences) + " separators but " +
           std::to_string(example.separator_positions.size()) +
           " positions are recorded";
  }
  if (document_count) {
    const std::size_t expected = style == SeparatorStyle::kTrailing
                                     ? *document_count
                                     : *document_count - 1;
    if (occurrences != expected) {
      return "expected " + std::to_string(expected) + " separators for " +
             std::to_string(*document_count) + " documents, found " +
             std::to_string(occurrences);
    }
  }
  for (std::size_t cp : example.separator_positions) {
    const std::size_t byte = utf8::ByteOffset(source, cp);
    if (byte == std::string_view::npos ||
        source.substr(byte, example.separator.size()) != example.separator) {
      return "separator position " + std::to_string(cp) +
             " does not point at a separator";
    }
  }
  return std::nullopt;
}

nlohmann::json ExampleToJson(const TrainingExample& example) {
  return json{{"format_version", kFormatVersion},
              {"example_id", example.example_id},
              {"source", example.source},
              {"target", example.target},
              {"separator", example.separator},
              {"separator_positions", example.separator_positions},
              {"meta", example.meta}};
}

TrainingExample ExampleFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("example is not an object");
  CheckFormatVersion(j);
  TrainingExample ex;
  ex.example_id = RequireString(j, "example_id", "example");
  ex.source = RequireString(j, "source", "example");
  ex.target = RequireString(j, "target", "example");
  ex.separator = RequireString(j, "separator", "example");
  const json& positions = Require(j, "separator_positions", "example");
  if (!positions.is_array()) {
    throw std::invalid_argument("separator_positions must be an array");
  }
  for (const json& p : positions) {
    if (!p.is_number_unsigned()) {
      throw std::invalid_argument("separator_positions must hold integers");
    }
    ex.separator_positions.push_back(p.get<std::size_t>());
  }
  if (auto it = j.find("meta"); it != j.end()) ex.meta = *it;
  return ex;
}

nlohmann::json ClusterToJson(const Cluster& cluster) {
  json docs = json::array();
  for (const Document& d : cluster.documents) {
    json doc{{"doc_id", d.doc_id}, {"text", d.text}};
    if (d.entities) {
      json entities = json::array();
      for (const EntityAnnotation& e : *d.entities) {
        entities.push_back(
            {{"surface", e.surface},
             {"start", utf8::CodePointCount(d.text, e.span.begin)},
             {"end", utf8::CodePointCount(d.text, e.span.end)}});
      }
      doc["entities"] = std::move(entities);
    }
    docs.push_back(std::move(doc));
  }
  json out{{"format_version", kFormatVersion},
           {"cluster_id", cluster.cluster_id},
           {"documents", std::move(docs)}};
  if (!cluster.source_meta.empty()) out["meta"] = cluster.source_meta;
  return out;
}

Cluster ClusterFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("record is not an object");
  CheckFormatVersion(j);
  Cluster cluster;
  cluster.cluster_id = RequireString(j, "cluster_id", "record");
  const json& docs = Require(j, "documents", "record");
  if (!docs.is_array()) {
    throw std::invalid_argument("field \"documents\" must be an array");
  }
  std::set<std::string> seen_ids;
  for (const json& d : docs) {
    if (!d.is_object())
      throw std::invalid_argument("document is not an object");
    Document doc;
    doc.doc_id = RequireString(d, "doc_id", "document");
    doc.text = RequireString(d, "text", "document");
    if (!seen_ids.insert(doc.doc_id).second) {
      throw std::invalid_argument("duplicate doc_id \"" + doc.doc_id + "\"");
    }
    if (auto it = d.find("entities"); it != d.end() && !it->is_null()) {
      if (!it->is_array()) {
        throw std::invalid_argument("field \"entities\" must be an array");
      }
      const std::size_t length = utf8::CodePointCount(doc.text);
      std::vector<EntityAnnotation> entities;
      for (const json& e : *it) {
        if (!e.is_object())
          throw std::invalid_argument("entity is not an object");
        const json& start = Require(e, "start", "entity");
        const json& end = Require(e, "end", "entity");
        if (!start.is_number_unsigned() || !end.is_number_unsigned()) {
          throw std::invalid_argument(
              "entity offsets must be non-negative integers");
        }
        const std::size_t s = start.get<std::size_t>();
        const std::size_t t = end.get<std::size_t>();
        if (s > t || t > length) {
          throw std::invalid_argument("entity offsets [" + std::to_string(s) +
                                      ", " + std::to_string(t) +
                                      ") out of bounds in document \"" +
                                      doc.doc_id + "\"");
        }
        entities.push_back(
            EntityAnnotation{RequireString(e, "surface", "entity"),
                             Span{utf8::ByteOffset(doc.text, s),
                                  utf8::ByteOffset(doc.text, t)}});
      }
      doc.entities = std::move(entities);
    }
    cluster.documents.push_back(std::move(doc));
  }
  if (auto it = j.find("meta"); it != j.end() && !it->is_null()) {
    if (!it->is_object())
      throw std::invalid_argument("field \"meta\" must be an object");
    for (const auto& [key, value] : it->items()) {
      cluster.source_meta[key] =
          value.is_string() ? value.get<std::string>() : Dump(value);
    }
  }
  return cluster;
}

// --- LineReader ------------------------------------------------------------

struct LineReader::Impl {
  gzFile file = nullptr;
  std::vector<char> buffer = std::vector<char>(1 << 16);
  std::size_t begin = 0;
  std::size_t end = 0;
  bool eof = false;
  std::string path;

  ~Impl() {
    if (file != nullptr) gzclose(file);
  }

  bool Fill() {
    if (eof) return false;
    const int n =
        gzread(file, buffer.data(), static_cast<unsigned>(buffer.size()));
    if (n < 0) {
      int errnum = 0;
      const char* msg = gzerror(file, &errnum);
      throw IoError("read error in " + path + ": " + (msg ? msg : "unknown"));
    }
    if (n == 0) {
      eof = true;
      return false;
    }
    begin = 0;
    end = static_cast<std::size_t>(n);
    return true;
  }
};

LineReader::LineReader(const std::filesystem::path& path)
    : impl_(std::make_unique<Impl>()) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) ||
      std::filesystem::is_directory(path, ec)) {
    throw IoError("cannot open " + path.string() + ": no such file");
  }
  impl_->path = path.string();
  impl_->file = gzopen(impl_->path.c_str(), "rb");
  if (impl_->file == nullptr) {
    throw IoError("cannot open " + impl_->path + ": " + std::strerror(errno));
  }
  gzbuffer(impl_->file, 1 << 17);
}

LineReader::~LineReader() = default;

std::optional<std::string> LineReader::Next() {
  std::string line;
  bool any = false;
  while (true) {
    if (impl_->begin == impl_->end && !impl_->Fill()) break;
    any = true;
    const char* start = impl_->buffer.data() + impl_->begin;
    const std::size_t avail = impl_->end - impl_->begin;
    const void* nl = std::memchr(start, '\n', avail);
    if (nl != nullptr) {
      const std::size_t len = static_cast<const char*>(nl) - start;
      line.append(start, len);
      impl_->begin += len + 1;
      ++line_number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    line.append(start, avail);
    impl_->begin = impl_->end;
  }
  if (!any || line.empty()) return std::nullopt;
  ++line_number_;
  if (line.back() == '\r') line.pop_back();
  return line;
}

// --- Readers ---------------------------------------------------------------

ClusterReader::ClusterReader(const std::filesystem::path& path)
    : lines_(path) {}

std::optional<ClusterRecordResult> ClusterReader::Next() {
  while (auto line = lines_.Next()) {
    if (line->find_first_not_of(" \t\r") == std::string::npos) continue;
    ClusterRecordResult result;
    result.line_number = lines_.line_number();
    try {
      result.cluster = ClusterFromJson(json::parse(*line));
    } catch (const json::exception& e) {
      result.error = std::string("invalid JSON: ") + e.what();
    } catch (const std::invalid_argument& e) {
      result.error = e.what();
    }
    return result;
  }
  return std::nullopt;
}

std::vector<Cluster> ReadAllClusters(const std::filesystem::path& path) {
  ClusterReader reader(path);
  std::vector<Cluster> clusters;
  while (auto r = reader.Next()) {
    if (!r->cluster) throw FormatError(r->line_number, r->error);
    clusters.push_back(std::move(*r->cluster));
  }
  return clusters;
}

ExampleReader::ExampleReader(const std::filesystem::path& path)
    : lines_(path) {}

std::optional<TrainingExample> ExampleReader::Next() {
  while (auto line = lines_.Next()) {
    if (line->find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      return ExampleFromJson(json::parse(*line));
    } catch (const json::exception& e) {
      throw FormatError(lines_.line_number(),
                        std::string("invalid JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw FormatError(lines_.line_number(), e.what());
    }
  }
  return std::nullopt;
}

std::vector<TrainingExample> ReadAllExamples(
    const std::filesystem::path& path) {
  ExampleReader reader(path);
  std::vector<TrainingExample> out;
  while (auto ex = reader.Next()) out.push_back(std::move(*ex));
  return out;
}

// --- Writers ---------------------------------------------------------------

namespace {

// A FILE* on a temporary sibling that is renamed over the target on Commit.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path target)
      : target_(std::move(target)), temp_(TempSibling(target_)) {
    file_ = std::fopen(temp_.c_str(), "wb");
    if (file_ == nullptr) {
      throw IoError("cannot write " + target_.string() + ": " +
                    std::strerror(errno));
    }
  }

  ~AtomicFile() { Abandon(); }

  void Append(std::string_view data) {
    if (std::fwrite(data.data(), 1, data.size(), file_) != data.size()) {
      const std::string reason = std::strerror(errno);
      Abandon();
      throw IoError("write to " + target_.string() + " failed: " + reason);
    }
  }

  void Commit() {
    const bool flushed = std::fflush(file_) == 0 && std::ferror(file_) == 0;
    const int err = errno;
    const bool closed = std::fclose(file_) == 0;
    file_ = nullptr;
    if (!flushed || !closed) {
      std::filesystem::remove(temp_);
      throw IoError("write to " + target_.string() +
                    " failed: " + std::strerror(err));
    }
    std::error_code ec;
    std::filesystem::rename(temp_, target_, ec);
    if (ec) {
      std::filesystem::remove(temp_);
      throw IoError("cannot rename into " + target_.string() + ": " +
                    ec.message());
    }
    committed_ = true;
  }

 private:
  void Abandon() {
    if (file_ != nullptr) {
      std::fclose(file_);
      file_ = nullptr;
    }
    if (!committed_) {
      std::error_code ec;
      std::filesystem::remove(temp_, ec);
    }
  }

  std::filesystem::path target_;
  std::filesystem::path temp_;
  std::FILE* file_ = nullptr;
  bool committed_ = false;
};

}  // namespace

struct ExampleWriter::Impl {
  explicit Impl(std::filesystem::path path) : file(std::move(path)) {}
  AtomicFile file;
};

ExampleWriter::ExampleWriter(std::filesystem::path path,
                             SerializeOptions options)
    : impl_(std::make_unique<Impl>(std::move(path))),
      options_(std::move(options)) {}

ExampleWriter::~ExampleWriter() = default;

void ExampleWriter::Write(const TrainingExample& example) {
  std::optional<std::size_t> doc_count;
  if (auto it = example.meta.find("num_input_documents");
      it != example.meta.end() && it->is_number_unsigned()) {
    doc_count = it->get<std::size_t>();
  }
  if (auto err = CheckSeparators(example, doc_count, options_.style)) {
    throw std::invalid_argument("example \"" + example.example_id +
                                "\": " + *err);
  }
  std::string line = Dump(ExampleToJson(example));
  line.push_back('\n');
  impl_->file.Append(line);
  ++count_;
}

std::size_t ExampleWriter::Commit() {
  impl_->file.Commit();
  return count_;
}

std::size_t WriteExamples(const std::filesystem::path& path,
                          std::span<const TrainingExample> examples,
                          const SerializeOptions& options) {
  ExampleWriter writer(path, options);
  for (const TrainingExample& ex : examples) writer.Write(ex);
  return writer.Commit();
}

void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view contents) {
  AtomicFile file(path);
  file.Append(contents);
  file.Commit();
}

}  // namespace mdscorpus
