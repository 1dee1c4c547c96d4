// include/sstbench/metrics.h

// Copyright 2026  The sstbench Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SSTBENCH_METRICS_H_
#define SSTBENCH_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sstbench/corpus.h"
#include "sstbench/models.h"

namespace sstbench {

struct EerResult {
  double eer = 0.0;        // fraction in [0, 1]
  double threshold = 0.0;  // score at the operating point nearest the crossing
  std::size_t n_target = 0;
  std::size_t n_nontarget = 0;
};

/// FAR(t) = share of non-targets scoring >= t, FRR(t) = share of targets
/// scoring < t, evaluated at every distinct score plus +inf. The EER is where
/// FAR - FRR changes sign, linearly interpolated between the two bracketing
/// operating points. Throws kDegenerateTrials unless both classes occur.
EerResult ComputeEer(std::span<const double> scores, std::span<const std::uint8_t> is_target);
EerResult ComputeEer(const ScoreSet &scores, const TrialList &trials);

enum class Linkage { kComplete, kAverage, kSingle };
enum class Distance { kCosine, kEuclidean };

Linkage ParseLinkage(std::string_view text);
std::string_view LinkageName(Linkage l);
Distance ParseDistance(std::string_view text);
std::string_view DistanceName(Distance d);

struct Partition {
  std::vector<int> cluster_of;  // dense ids 0..k-1, numbered by first member
  int k = 0;
};

/// Pairwise distance matrix, row-major n x n. Cosine distance is 1 - cos.
std::vector<double> PairwiseDistances(std::span<const Embedding> items, Distance distance);

/// Agglomerative clustering from singletons until k clusters remain. Among
/// equal distances the pair with the smallest (i, j) merges first, where i
/// and j are the smallest member indices of the two clusters.
Partition HierCluster(std::span<const Embedding> items, int k, Linkage linkage,
                      Distance distance);
Partition HierClusterFromDistances(std::size_t n, std::span<const double> distances, int k,
                                   Linkage linkage);

/// Share of items outside their cluster's speaker under the one-to-one
/// cluster/speaker assignment that maximizes matched items.
double MisclassificationRate(const Partition &partition, std::span<const std::string> labels);

/// Alternative definition: each cluster is credited with its majority speaker.
double MisclassificationRateMajority(const Partition &partition,
                                     std::span<const std::string> labels);

/// Maximum-weight perfect matching on a square matrix (Hungarian method).
/// Returns the total weight; `assignment[row]` receives the chosen column.
std::int64_t MaxWeightMatching(std::span<const std::int64_t> weights, std::size_t n,
                               std::vector<int> *assignment = nullptr);

}  // namespace sstbench

#endif  // SSTBENCH_METRICS_H_
