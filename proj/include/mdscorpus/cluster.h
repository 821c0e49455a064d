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

#ifndef MDSCORPUS_CLUSTER_H_
#define MDSCORPUS_CLUSTER_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdscorpus/sentence_splitter.h"

namespace mdscorpus {

// An externally supplied entity mention. `span` is in bytes of the owning
// document's text; on disk the offsets are code points.
struct EntityAnnotation {
  std::string surface;
  Span span;

  bool operator==(const EntityAnnotation&) const = default;
};

struct Document {
  std::string doc_id;
  std::string text;
  // Absent when the input carried no "entities" field.
  std::optional<std::vector<EntityAnnotation>> entities;

  bool operator==(const Document&) const = default;
};

// One news story: a set of documents in input file order, doc ids unique.
struct Cluster {
  std::string cluster_id;
  std::vector<Document> documents;
  std::map<std::string, std::string> source_meta;

  std::size_t size() const { return documents.size(); }
  bool operator==(const Cluster&) const = default;
};

}  // namespace mdscorpus

#endif  // MDSCORPUS_CLUSTER_H_
