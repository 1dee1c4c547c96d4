// tests/rng_test.cc

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

#include <algorithm>
#include <numeric>
#include <set>

#include "sstbench/rng.h"
#include "sstbench/scramble.h"

namespace sstbench {
namespace {

// Expected values below come from an independent Python implementation of
// the same derivation (published in the README).

TEST(RngTest, Mix64Vectors) {
  EXPECT_EQ(Mix64(0), 0u);
  EXPECT_EQ(Mix64(1), 6238072747940578789ULL);
}

TEST(RngTest, Fnv1a64Vectors) {
  EXPECT_EQ(Fnv1a64(""), 14695981039346656037ULL);
  EXPECT_EQ(Fnv1a64("fadg0_sa1"), 9930056205797220415ULL);
}

TEST(RngTest, DeriveSeedVectors) {
  EXPECT_EQ(DeriveSeed(42, {1, 2, 3}), 15410141297356829946ULL);
  EXPECT_EQ(DeriveSeed(0, {}), 0u);
}

TEST(RngTest, SplitMixStreamMatchesReferenceSequence) {
  SplitMixStream s(0);
  EXPECT_EQ(s.Next(), 16294208416658607535ULL);
  EXPECT_EQ(s.Next(), 7960286522194355700ULL);
  EXPECT_EQ(s.Next(), 487617019471545679ULL);
}

TEST(RngTest, UniformIndexVector) {
  SplitMixStream s(12345);
  std::vector<std::uint64_t> got;
  for (int i = 0; i < 8; ++i) got.push_back(s.UniformIndex(10));
  EXPECT_EQ(got, (std::vector<std::uint64_t>{4, 7, 5, 0, 3, 6, 6, 8}));
}

TEST(RngTest, DrawSeedVectors) {
  EXPECT_EQ(DrawSeed(2024, {0, 0, "fadg0_sa1"}), 11207246209506526064ULL);
  EXPECT_EQ(DrawSeed(2024, {3, -1, "fadg0_sa1"}), 9561464615430154170ULL);
}

TEST(RngTest, UniformIndexStaysInRange) {
  SplitMixStream s(99);
  for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 7ULL, 1000ULL, (1ULL << 63) + 5})
    for (int i = 0; i < 1000; ++i) EXPECT_LT(s.UniformIndex(n), n);
}

TEST(RngTest, UniformDoubleInUnitInterval) {
  SplitMixStream s(5);
  double lo = 1, hi = 0;
  for (int i = 0; i < 10000; ++i) {
    double u = s.UniformDouble();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  EXPECT_LT(lo, 0.01);
  EXPECT_GT(hi, 0.99);
}

TEST(RngTest, GaussianMoments) {
  SplitMixStream s(8);
  const int n = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    double g = s.Gaussian();
    sum += g;
    sq += g * g;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.02);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(RngTest, ShuffleIsPermutationAndDeterministic) {
  std::vector<int> a(50), b(50);
  std::iota(a.begin(), a.end(), 0);
  b = a;
  SplitMixStream s1(3), s2(3);
  s1.Shuffle(std::span(a));
  s2.Shuffle(std::span(b));
  EXPECT_EQ(a, b);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> ref(50);
  std::iota(ref.begin(), ref.end(), 0);
  EXPECT_EQ(sorted, ref);
  EXPECT_NE(a, ref);
}

TEST(RngTest, DistinctPathsGiveDistinctSeeds) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t run = 0; run < 5; ++run)
    for (std::uint64_t tag = 1; tag <= 4; ++tag)
      for (std::uint64_t i = 0; i < 50; ++i) seen.insert(DeriveSeed(77, {run, tag, i}));
  EXPECT_EQ(seen.size(), 5u * 4u * 50u);
  EXPECT_NE(DeriveSeed(1, {2, 3}), DeriveSeed(1, {3, 2}));
}

}  // namespace
}  // namespace sstbench
