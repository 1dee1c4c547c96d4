// benchmarks/scoring_bench.cc

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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "sstbench/corpus.h"
#include "sstbench/models.h"

namespace {

void BM_ScorePairs(benchmark::State &state) {
  const int speakers = static_cast<int>(state.range(0));
  std::vector<std::string> utts, spks;
  sstbench::EmbeddingMap map;
  std::mt19937_64 gen(4);
  std::normal_distribution<double> normal;
  for (int s = 0; s < speakers; ++s)
    for (int u = 0; u < 10; ++u) {
      const std::string id = std::to_string(s) + "_" + std::to_string(u);
      utts.push_back(id);
      spks.push_back(std::to_string(s));
      auto &e = map[id];
      e.vector.resize(40);
      for (double &v : e.vector) v = normal(gen);
    }
  const auto trials =
      sstbench::BuildTrials(utts, spks, sstbench::TrialOrdering::kUnordered);
  for (auto _ : state)
    benchmark::DoNotOptimize(sstbench::ScorePairs(map, trials, sstbench::Scorer::kCosine));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials.size()));
}
BENCHMARK(BM_ScorePairs)->Arg(24)->Arg(168)->Unit(benchmark::kMillisecond);

}  // namespace
