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

#include "mdscorpus/centroid.h"

#include <stdexcept>
#include <string>
#include <vector>

namespace mdscorpus {
namespace {

void RequireScorable(std::size_t size) {
  if (size < 2) {
    throw std::invalid_argument(
        "centroid selection needs at least 2 documents, got " +
        std::to_string(size));
  }
}

std::vector<DocumentProfile> BuildProfiles(const Cluster& cluster,
                                           const ProfileOptions& options) {
  std::vector<DocumentProfile> profiles;
  profiles.reserve(cluster.size());
  for (const Document& d : cluster.documents) {
    profiles.push_back(DocumentProfile::Build(d.text, options));
  }
  return profiles;
}

}  // namespace

MatchTable::MatchTable(std::span<const DocumentProfile> profiles,
                       MatchBasis basis)
    : size_(profiles.size()), values_(size_ * size_, 0.0) {
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = i + 1; j < size_; ++j) {
      const double forward =
          ComputeMatchScore(profiles[i], profiles[j], basis).value;
      values_[i * size_ + j] = forward;
      // F-measure is symmetric bit for bit: 2*p*r/(p+r) with p and r
      // swapped performs the same roundings.
      values_[j * size_ + i] =
          basis == MatchBasis::kFMeasure
              ? forward
              : ComputeMatchScore(profiles[j], profiles[i], basis).value;
    }
  }
}

double ScoreDocument(const MatchTable& table, std::size_t index) {
  RequireScorable(table.size());
  if (index >= table.size()) {
    throw std::invalid_argument("document index " + std::to_string(index) +
                                " out of range for cluster of " +
                                std::to_string(table.size()));
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < table.size(); ++j) {
    if (j != index) sum += table.at(index, j);
  }
  return sum / static_cast<double>(table.size());
}

double ScoreDocument(const Cluster& cluster, std::size_t index,
                     const CentroidOptions& options) {
  RequireScorable(cluster.size());
  if (index >= cluster.size()) {
    throw std::invalid_argument("document index " + std::to_string(index) +
                                " out of range for cluster of " +
                                std::to_string(cluster.size()));
  }
  const std::vector<DocumentProfile> profiles =
      BuildProfiles(cluster, options.profile);
  double sum = 0.0;
  for (std::size_t j = 0; j < profiles.size(); ++j) {
    if (j == index) continue;
    sum += ComputeMatchScore(profiles[index], profiles[j], options.basis).value;
  }
  return sum / static_cast<double>(profiles.size());
}

CentroidResult SelectCentroid(std::span<const DocumentProfile> profiles,
                              MatchBasis basis) {
  RequireScorable(profiles.size());
  const MatchTable table(profiles, basis);
  CentroidResult result;
  result.per_document_scores.reserve(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const double score = ScoreDocument(table, i);
    result.per_document_scores.push_back(score);
    if (i == 0 || score > result.centroid_score) {
      result.centroid_index = i;
      result.centroid_score = score;
    }
  }
  return result;
}

CentroidResult SelectCentroid(const Cluster& cluster,
                              const CentroidOptions& options) {
  RequireScorable(cluster.size());
  const std::vector<DocumentProfile> profiles =
      BuildProfiles(cluster, options.profile);
  CentroidResult result = SelectCentroid(profiles, options.basis);
  result.cluster_id = cluster.cluster_id;
  return result;
}

TrainingExample BuildCentrumExample(const Cluster& cluster,
                                    const CentroidResult& result,
                                    const SerializeOptions& options) {
  if (result.cluster_id != cluster.cluster_id) {
    throw std::invalid_argument("centroid result for cluster \"" +
                                result.cluster_id + "\" applied to cluster \"" +
                                cluster.cluster_id + "\"");
  }
  if (result.centroid_index >= cluster.size() ||
      result.per_document_scores.size() != cluster.size()) {
    throw std::invalid_argument("centroid result does not match cluster \"" +
                                cluster.cluster_id + "\" size");
  }
  std::vector<std::string> inputs;
  inputs.reserve(cluster.size() - 1);
  for (std::size_t i = 0; i < cluster.size(); ++i) {
    if (i != result.centroid_index) inputs.push_back(cluster.documents[i].text);
  }
  const Document& centroid = cluster.documents[result.centroid_index];
  TrainingExample ex = SerializeExample(inputs, centroid.text, options);
  ex.example_id = cluster.cluster_id;
  ex.meta = {{"mode", "centrum"},
             {"centroid_index", result.centroid_index},
             {"centroid_doc_id", centroid.doc_id},
             {"centroid_score", result.centroid_score},
             {"per_document_scores", result.per_document_scores},
             {"num_input_documents", inputs.size()}};
  return ex;
}

}  // namespace mdscorpus
