// tests/metrics_test.cc

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

#include <gtest/gtest.h>

#include <random>

#include "sstbench/metrics.h"
#include "test_util.h"

namespace sstbench {
namespace {

EerResult Eer(const std::vector<double> &s, const std::vector<std::uint8_t> &t) {
  return ComputeEer(std::span<const double>(s), std::span<const std::uint8_t>(t));
}

TEST(EerTest, WorkedExamples) {
  // Targets 0.2, 0.8, 0.9 against non-targets 0.1, 0.5, 0.85: FAR and FRR
  // meet at 1/3 at threshold 0.8.
  EerResult r = Eer({0.2, 0.8, 0.9, 0.1, 0.5, 0.85}, {1, 1, 1, 0, 0, 0});
  EXPECT_DOUBLE_EQ(r.eer, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.threshold, 0.8);
  EXPECT_EQ(r.n_target, 3u);
  EXPECT_EQ(r.n_nontarget, 3u);
  EXPECT_DOUBLE_EQ(Eer({3, 4, 1, 2}, {1, 1, 0, 0}).eer, 0.0);
  EXPECT_DOUBLE_EQ(Eer({1, 2}, {1, 0}).eer, 1.0);
  EXPECT_DOUBLE_EQ(Eer({0.9, 0.8, 0.3, 0.7, 0.2, 0.1}, {1, 1, 1, 0, 0, 0}).eer, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(Eer({1, 1, 1, 0, 0}, {1, 1, 1, 0, 0}).eer, 0.0);
  EXPECT_DOUBLE_EQ(Eer({0.4, 0.4, 0.4, 0.4}, {1, 0, 1, 0}).eer, 0.5);
}

TEST(EerTest, Errors) {
  EXPECT_SST_ERROR(Eer({1, 2}, {1, 1}), ErrorKind::kDegenerateTrials);
  EXPECT_SST_ERROR(Eer({1, 2}, {0, 0}), ErrorKind::kDegenerateTrials);
  EXPECT_SST_ERROR(Eer({}, {}), ErrorKind::kDegenerateTrials);
  EXPECT_SST_ERROR(Eer({1, NAN}, {1, 0}), ErrorKind::kInvalidEmbedding);
}

TEST(EerTest, MatchesBruteForceOracle) {
  std::mt19937_64 gen(7);
  for (int set = 0; set < 1000; ++set) {
    const int n = 2 + static_cast<int>(gen() % 40);
    const int levels = 1 + static_cast<int>(gen() % 12);  // forces ties
    std::vector<double> s(n);
    std::vector<std::uint8_t> t(n);
    for (int i = 0; i < n; ++i) {
      t[i] = gen() % 2;
      s[i] = static_cast<double>(gen() % levels) + (t[i] ? 0.5 * (gen() % 2) : 0.0);
    }
    t[0] = 1;
    t[1] = 0;
    ASSERT_NEAR(Eer(s, t).eer, testing::OracleEer(s, t), 1e-12) << "set " << set;
  }
}

TEST(EerTest, InvariantUnderMonotoneTransform) {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> normal;
  for (int set = 0; set < 200; ++set) {
    std::vector<double> s(30), g(30);
    std::vector<std::uint8_t> t(30);
    for (int i = 0; i < 30; ++i) {
      t[i] = i % 3 == 0;
      s[i] = normal(gen) + (t[i] ? 1.0 : 0.0);
      g[i] = std::exp(2.0 * s[i]) + 5.0;
    }
    EXPECT_DOUBLE_EQ(Eer(s, t).eer, Eer(g, t).eer);
  }
}

// Scores are symmetric, so each unordered trial appears twice in the ordered
// list with the same score and label; the rates do not change.
TEST(EerTest, OrderedAndUnorderedTrialsAgree) {
  std::vector<std::string> utts, spks;
  EmbeddingMap map;
  std::mt19937_64 gen(5);
  std::normal_distribution<double> normal;
  for (int s = 0; s < 5; ++s)
    for (int u = 0; u < 4; ++u) {
      const std::string id = testing::SpeakerName(s) + "_u" + std::to_string(u);
      utts.push_back(id);
      spks.push_back(testing::SpeakerName(s));
      map[id].vector = {s + 0.8 * normal(gen), 0.8 * normal(gen), 1.0};
    }
  TrialList ord = BuildTrials(utts, spks, TrialOrdering::kOrdered);
  TrialList uno = BuildTrials(utts, spks, TrialOrdering::kUnordered);
  EXPECT_EQ(ord.size(), 2 * uno.size());
  const double a = ComputeEer(ScorePairs(map, ord, Scorer::kCosine), ord).eer;
  const double b = ComputeEer(ScorePairs(map, uno, Scorer::kCosine), uno).eer;
  EXPECT_NEAR(a, b, 1e-12);
  EXPECT_GT(a, 0.0);
}

std::vector<Embedding> Points1d(std::initializer_list<double> xs) {
  std::vector<Embedding> out;
  for (double x : xs) out.push_back({{x}});
  return out;
}

TEST(ClusterTest, TwoObviousGroups) {
  const auto pts = Points1d({0.0, 0.1, 10.0, 10.1});
  for (Linkage l : {Linkage::kComplete, Linkage::kAverage, Linkage::kSingle}) {
    Partition p = HierCluster(pts, 2, l, Distance::kEuclidean);
    EXPECT_EQ(p.k, 2);
    EXPECT_EQ(p.cluster_of, (std::vector<int>{0, 0, 1, 1}));
  }
  const auto mixed = Points1d({10.0, 0.0, 10.1, 0.1});
  EXPECT_EQ(HierCluster(mixed, 2, Linkage::kAverage, Distance::kEuclidean).cluster_of,
            (std::vector<int>{0, 1, 0, 1}));
}

TEST(ClusterTest, LinkagesDiffer) {
  // Chain 0,1,2,3 (gaps 1) and a point at 4.5: single linkage leaves
  // 4.5 alone, complete linkage splits the chain.
  const auto pts = Points1d({0, 1, 2, 3, 4.5});
  EXPECT_EQ(HierCluster(pts, 2, Linkage::kSingle, Distance::kEuclidean).cluster_of,
            (std::vector<int>{0, 0, 0, 0, 1}));
  EXPECT_EQ(HierCluster(pts, 2, Linkage::kComplete, Distance::kEuclidean).cluster_of,
            (std::vector<int>{0, 0, 1, 1, 1}));
}

TEST(ClusterTest, TiesBreakOnSmallestIndices) {
  const auto pts = Points1d({0, 1, 2, 3});
  EXPECT_EQ(HierCluster(pts, 3, Linkage::kSingle, Distance::kEuclidean).cluster_of,
            (std::vector<int>{0, 0, 1, 2}));
}

TEST(ClusterTest, KBounds) {
  const auto pts = Points1d({0, 1, 2});
  EXPECT_EQ(HierCluster(pts, 3, Linkage::kAverage, Distance::kEuclidean).cluster_of,
            (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(HierCluster(pts, 1, Linkage::kAverage, Distance::kEuclidean).cluster_of,
            (std::vector<int>{0, 0, 0}));
  EXPECT_THROW(HierCluster(pts, 4, Linkage::kAverage, Distance::kEuclidean), Error);
  EXPECT_THROW(HierCluster(pts, 0, Linkage::kAverage, Distance::kEuclidean), Error);
}

TEST(ClusterTest, CosineDistance) {
  std::vector<Embedding> pts{{{1, 0}}, {{0, 1}}, {{2, 0.1}}, {{0.1, 3}}};
  std::vector<double> d = PairwiseDistances(pts, Distance::kCosine);
  EXPECT_NEAR(d[0 * 4 + 1], 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(d[0], 0.0);
  EXPECT_EQ(HierCluster(pts, 2, Linkage::kComplete, Distance::kCosine).cluster_of,
            (std::vector<int>{0, 1, 0, 1}));
}

TEST(MisclassificationTest, OneOutOfEighty) {
  Partition p;
  p.k = 2;
  std::vector<std::string> labels;
  for (int i = 0; i < 80; ++i) {
    labels.push_back(i < 40 ? "a" : "b");
    p.cluster_of.push_back(i < 41 ? 0 : 1);
  }
  EXPECT_DOUBLE_EQ(MisclassificationRate(p, labels), 1.0 / 80.0);
  EXPECT_DOUBLE_EQ(MisclassificationRateMajority(p, labels), 1.0 / 80.0);
}

// 40 speakers x 2 items; speaker 0's second item sits in speaker 1's cluster,
// leaving a 3-item cluster and a singleton.
TEST(MisclassificationTest, OneDisplacedItemOfFortyPairs) {
  Partition p;
  p.k = 40;
  std::vector<std::string> labels;
  for (int s = 0; s < 40; ++s)
    for (int u = 0; u < 2; ++u) {
      labels.push_back(testing::SpeakerName(s));
      p.cluster_of.push_back(s == 0 && u == 1 ? 1 : s);
    }
  EXPECT_DOUBLE_EQ(MisclassificationRate(p, labels), 1.0 / 80.0);
  for (int &c : p.cluster_of) c = (c + 7) % 40;
  EXPECT_DOUBLE_EQ(MisclassificationRate(p, labels), 1.0 / 80.0);
}

TEST(MisclassificationTest, InvariantToClusterRelabeling) {
  std::mt19937_64 gen(3);
  for (int set = 0; set < 200; ++set) {
    const int k = 2 + set % 4, n = 20;
    Partition p;
    p.k = k;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
      labels.push_back(testing::SpeakerName(i < k ? i : static_cast<int>(gen() % k)));
      p.cluster_of.push_back(i < k ? i : static_cast<int>(gen() % k));
    }
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    Partition q = p;
    for (int &c : q.cluster_of) c = perm[c];
    EXPECT_DOUBLE_EQ(MisclassificationRate(p, labels), MisclassificationRate(q, labels));
  }
}

TEST(MisclassificationTest, MajorityCanBeLowerThanMatching) {
  // Both clusters are mostly speaker a; majority credits a twice.
  Partition p{{0, 0, 0, 1, 1, 1}, 2};
  std::vector<std::string> labels{"a", "a", "b", "a", "a", "b"};
  EXPECT_DOUBLE_EQ(MisclassificationRate(p, labels), 3.0 / 6.0);
  EXPECT_DOUBLE_EQ(MisclassificationRateMajority(p, labels), 2.0 / 6.0);
}

TEST(MisclassificationTest, ClusterCountMustMatchSpeakers) {
  Partition p{{0, 1, 2}, 3};
  std::vector<std::string> labels{"a", "b", "b"};
  EXPECT_SST_ERROR(MisclassificationRate(p, labels), ErrorKind::kConfig);
}

std::int64_t BruteMatching(const std::vector<std::int64_t> &w, std::size_t n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  do {
    std::int64_t s = 0;
    for (std::size_t r = 0; r < n; ++r) s += w[r * n + perm[r]];
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TEST(MatchingTest, HungarianMatchesBruteForce) {
  std::mt19937_64 gen(13);
  for (int set = 0; set < 500; ++set) {
    const std::size_t n = 1 + set % 7;
    std::vector<std::int64_t> w(n * n);
    for (auto &v : w) v = static_cast<std::int64_t>(gen() % 50);
    std::vector<int> assign;
    const std::int64_t got = MaxWeightMatching(w, n, &assign);
    ASSERT_EQ(got, BruteMatching(w, n)) << "set " << set;
    std::int64_t check = 0;
    std::vector<int> seen(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
      check += w[r * n + assign[r]];
      ++seen[assign[r]];
    }
    EXPECT_EQ(check, got);
    EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), static_cast<long>(n));
  }
}

TEST(MetricNamesTest, ParseRoundTrip) {
  EXPECT_EQ(ParseLinkage(LinkageName(Linkage::kSingle)), Linkage::kSingle);
  EXPECT_EQ(ParseDistance(DistanceName(Distance::kEuclidean)), Distance::kEuclidean);
  EXPECT_SST_ERROR(ParseLinkage("ward"), ErrorKind::kConfig);
}

}  // namespace
}  // namespace sstbench
