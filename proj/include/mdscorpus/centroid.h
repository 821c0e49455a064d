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

// Centroid document selection.
//
// Each document x of a cluster D is scored as
//
//   score(x) = 1/|D| * sum over x' in D, x' != x, of f(x, x')
//
// where f is ComputeMatchScore (mean of ROUGE-1, ROUGE-2 and ROUGE-L). The
// normalizer is the full cluster size even though the sum has |D| - 1 terms;
// it is a per-cluster constant and never changes the argmax. The highest
// scoring document, lowest index on ties, becomes the summary and the rest
// of the cluster becomes the input.

#ifndef MDSCORPUS_CENTROID_H_
#define MDSCORPUS_CENTROID_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mdscorpus/cluster.h"
#include "mdscorpus/corpus_io.h"
#include "mdscorpus/rouge.h"

namespace mdscorpus {

struct CentroidOptions {
  MatchBasis basis = MatchBasis::kFMeasure;
  ProfileOptions profile;
};

struct CentroidResult {
  std::string cluster_id;
  std::size_t centroid_index = 0;
  double centroid_score = 0.0;
  std::vector<double> per_document_scores;
};

// Pairwise f(x_i, x_j) for all i != j; the diagonal is unused. With the
// f-measure basis f is symmetric and only the upper triangle is computed.
class MatchTable {
 public:
  MatchTable(std::span<const DocumentProfile> profiles, MatchBasis basis);

  double at(std::size_t summary, std::size_t document) const {
    return values_[summary * size_ + document];
  }
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
  std::vector<double> values_;
};

// Throws std::invalid_argument when the cluster has fewer than two
// documents or `index` is out of range.
double ScoreDocument(const Cluster& cluster, std::size_t index,
                     const CentroidOptions& options = {});
double ScoreDocument(const MatchTable& table, std::size_t index);

// Throws std::invalid_argument for clusters of fewer than two documents.
CentroidResult SelectCentroid(const Cluster& cluster,
                              const CentroidOptions& options = {});
CentroidResult SelectCentroid(std::span<const DocumentProfile> profiles,
                              MatchBasis basis = MatchBasis::kFMeasure);

// Input: every non-centroid document, in cluster order. Target: the centroid.
// Throws std::invalid_argument when `result` was computed for another
// cluster or its index is out of range.
TrainingExample BuildCentrumExample(const Cluster& cluster,
                                    const CentroidResult& result,
                                    const SerializeOptions& options = {});

}  // namespace mdscorpus

#endif  // MDSCORPUS_CENTROID_H_
