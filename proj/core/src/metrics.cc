// src/metrics.cc

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

#include "sstbench/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "sstbench/error.h"

namespace sstbench {

EerResult ComputeEer(std::span<const double> scores, std::span<const std::uint8_t> is_target) {
  if (scores.size() != is_target.size())
    Fail(ErrorKind::kConfig, "score and label counts differ");
  std::vector<std::pair<double, bool>> items(scores.size());
  std::size_t nt = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i]))
      Fail(ErrorKind::kInvalidEmbedding, "non-finite score at trial " + std::to_string(i));
    items[i] = {scores[i], is_target[i] != 0};
    nt += is_target[i] != 0;
  }
  const std::size_t nn = items.size() - nt;
  if (nt == 0 || nn == 0)
    Fail(ErrorKind::kDegenerateTrials, "EER needs both target and non-target trials");
  std::sort(items.begin(), items.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });

  // Walk thresholds upward. Before threshold items[i].first, everything below
  // it counts as rejected.
  const double inv_t = 1.0 / static_cast<double>(nt), inv_n = 1.0 / static_cast<double>(nn);
  std::size_t targets_below = 0, nontargets_below = 0;
  double prev_far = 1.0, prev_frr = 0.0, prev_thr = items.front().first;
  EerResult r{0.0, 0.0, nt, nn};

  auto finish = [&](double far, double frr, double thr, bool at_infinity) {
    const double d_prev = prev_far - prev_frr, d = far - frr;
    if (d == 0.0) {
      r.eer = far;
      r.threshold = thr;
    } else {
      const double alpha = d_prev / (d_prev - d);
      r.eer = prev_far + alpha * (far - prev_far);
      r.threshold = (at_infinity || std::abs(d_prev) <= std::abs(d)) ? prev_thr : thr;
    }
    return r;
  };

  std::size_t i = 0;
  while (i < items.size()) {
    const double thr = items[i].first;
    const double far = 1.0 - static_cast<double>(nontargets_below) * inv_n;
    const double frr = static_cast<double>(targets_below) * inv_t;
    if (far - frr <= 0.0) return finish(far, frr, thr, false);
    prev_far = far;
    prev_frr = frr;
    prev_thr = thr;
    for (; i < items.size() && items[i].first == thr; ++i)
      (items[i].second ? targets_below : nontargets_below) += 1;
  }
  return finish(0.0, 1.0, prev_thr, true);
}

EerResult ComputeEer(const ScoreSet &scores, const TrialList &trials) {
  if (scores.scores.size() != trials.size())
    Fail(ErrorKind::kConfig, "score count does not match trial count");
  std::vector<std::uint8_t> labels(trials.size());
  for (std::size_t i = 0; i < trials.size(); ++i) labels[i] = trials.trials[i].is_target;
  return ComputeEer(scores.scores, labels);
}

Linkage ParseLinkage(std::string_view s) {
  if (s == "complete") return Linkage::kComplete;
  if (s == "average") return Linkage::kAverage;
  if (s == "single") return Linkage::kSingle;
  Fail(ErrorKind::kConfig, "unknown linkage '" + std::string(s) + "'");
}

std::string_view LinkageName(Linkage l) {
  switch (l) {
    case Linkage::kComplete: return "complete";
    case Linkage::kAverage: return "average";
    case Linkage::kSingle: return "single";
  }
  return "?";
}

Distance ParseDistance(std::string_view s) {
  if (s == "cosine") return Distance::kCosine;
  if (s == "euclidean") return Distance::kEuclidean;
  Fail(ErrorKind::kConfig, "unknown distance '" + std::string(s) + "'");
}

std::string_view DistanceName(Distance d) {
  return d == Distance::kCosine ? "cosine" : "euclidean";
}

std::vector<double> PairwiseDistances(std::span<const Embedding> items, Distance distance) {
  const std::size_t n = items.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v;
      if (distance == Distance::kCosine) {
        v = 1.0 - ScorePair(items[i], items[j], Scorer::kCosine);
      } else {
        v = std::sqrt(-ScorePair(items[i], items[j], Scorer::kNegSqEuclidean));
      }
      d[i * n + j] = d[j * n + i] = v;
    }
  }
  return d;
}

Partition HierClusterFromDistances(std::size_t n, std::span<const double> distances, int k,
                                   Linkage linkage) {
  if (k < 1 || static_cast<std::size_t>(k) > n)
    Fail(ErrorKind::kConfig, "cluster count k=" + std::to_string(k) + " not in 1.." +
                                 std::to_string(n));
  if (distances.size() != n * n) Fail(ErrorKind::kConfig, "distance matrix must be n x n");

  // Cluster c is stored at the index of its smallest member, so scanning
  // active indices in order realizes the (i, j) tie rule.
  std::vector<double> d(distances.begin(), distances.end());
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> active(n, true);
  std::vector<std::size_t> owner(n);
  std::iota(owner.begin(), owner.end(), std::size_t{0});

  for (std::size_t clusters = n; clusters > static_cast<std::size_t>(k); --clusters) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        if (!found || d[i * n + j] < best) {
          best = d[i * n + j];
          bi = i;
          bj = j;
          found = true;
        }
      }
    }
    for (std::size_t m = 0; m < n; ++m) {
      if (!active[m] || m == bi || m == bj) continue;
      const double a = d[bi * n + m], b = d[bj * n + m];
      double merged;
      switch (linkage) {
        case Linkage::kComplete: merged = std::max(a, b); break;
        case Linkage::kSingle: merged = std::min(a, b); break;
        case Linkage::kAverage:
        default:
          merged = (a * static_cast<double>(size[bi]) + b * static_cast<double>(size[bj])) /
                   static_cast<double>(size[bi] + size[bj]);
          break;
      }
      d[bi * n + m] = d[m * n + bi] = merged;
    }
    size[bi] += size[bj];
    active[bj] = false;
    for (std::size_t m = 0; m < n; ++m)
      if (owner[m] == bj) owner[m] = bi;
  }

  Partition p;
  p.cluster_of.assign(n, -1);
  std::vector<int> dense(n, -1);
  for (std::size_t m = 0; m < n; ++m) {
    if (dense[owner[m]] < 0) dense[owner[m]] = p.k++;
    p.cluster_of[m] = dense[owner[m]];
  }
  return p;
}

Partition HierCluster(std::span<const Embedding> items, int k, Linkage linkage,
                      Distance distance) {
  if (k < 1 || static_cast<std::size_t>(k) > items.size())
    Fail(ErrorKind::kConfig, "cluster count k=" + std::to_string(k) + " not in 1.." +
                                 std::to_string(items.size()));
  return HierClusterFromDistances(items.size(), PairwiseDistances(items, distance), k,
                                  linkage);
}

std::int64_t MaxWeightMatching(std::span<const std::int64_t> w, std::size_t n,
                               std::vector<int> *assignment) {
  if (w.size() != n * n) Fail(ErrorKind::kConfig, "matching needs a square matrix");
  if (n == 0) {
    if (assignment) assignment->clear();
    return 0;
  }
  // Minimize (max - w) with the O(n^3) potentials formulation; 1-based arrays.
  const std::int64_t top = *std::max_element(w.begin(), w.end());
  auto cost = [&](std::size_t i, std::size_t j) { return top - w[(i - 1) * n + (j - 1)]; };
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<bool> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      std::int64_t delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n);
  std::int64_t total = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    row_to_col[p[j] - 1] = static_cast<int>(j - 1);
    total += w[(p[j] - 1) * n + (j - 1)];
  }
  if (assignment) *assignment = std::move(row_to_col);
  return total;
}

namespace {

// Cluster x speaker co-occurrence counts; speakers numbered by first item.
std::vector<std::int64_t> Contingency(const Partition &p, std::span<const std::string> labels,
                                      std::size_t *n_speakers) {
  if (labels.size() != p.cluster_of.size())
    Fail(ErrorKind::kConfig, "partition and label counts differ");
  std::map<std::string, int> speaker_index;
  std::vector<int> spk(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    spk[i] = speaker_index.try_emplace(labels[i], static_cast<int>(speaker_index.size()))
                 .first->second;
  *n_speakers = speaker_index.size();
  const std::size_t cols = speaker_index.size();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(p.k) * cols, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = p.cluster_of[i];
    if (c < 0 || c >= p.k) Fail(ErrorKind::kConfig, "cluster id out of range");
    counts[static_cast<std::size_t>(c) * cols + static_cast<std::size_t>(spk[i])] += 1;
  }
  return counts;
}

}  // namespace

double MisclassificationRate(const Partition &partition, std::span<const std::string> labels) {
  std::size_t n_speakers = 0;
  auto counts = Contingency(partition, labels, &n_speakers);
  if (static_cast<std::size_t>(partition.k) != n_speakers)
    Fail(ErrorKind::kConfig, "partition has k=" + std::to_string(partition.k) +
                                 " clusters for " + std::to_string(n_speakers) + " speakers");
  if (labels.empty()) return 0.0;
  const std::int64_t matched = MaxWeightMatching(counts, n_speakers);
  return static_cast<double>(static_cast<std::int64_t>(labels.size()) - matched) /
         static_cast<double>(labels.size());
}

double MisclassificationRateMajority(const Partition &partition,
                                     std::span<const std::string> labels) {
  std::size_t n_speakers = 0;
  auto counts = Contingency(partition, labels, &n_speakers);
  if (labels.empty()) return 0.0;
  std::int64_t matched = 0;
  for (int c = 0; c < partition.k; ++c) {
    auto row = std::span(counts).subspan(static_cast<std::size_t>(c) * n_speakers, n_speakers);
    matched += *std::max_element(row.begin(), row.end());
  }
  return static_cast<double>(static_cast<std::int64_t>(labels.size()) - matched) /
         static_cast<double>(labels.size());
}

}  // namespace sstbench
