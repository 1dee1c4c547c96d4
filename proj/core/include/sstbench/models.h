// include/sstbench/models.h

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

#ifndef SSTBENCH_MODELS_H_
#define SSTBENCH_MODELS_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sstbench/corpus.h"
#include "sstbench/frontend.h"
#include "sstbench/scramble.h"

namespace sstbench {

struct Embedding {
  std::vector<double> vector;
  bool normalized = false;

  std::size_t dim() const noexcept { return vector.size(); }
};

using EmbeddingMap = std::unordered_map<std::string, Embedding>;

enum class ModelKind { kAvgBaseline, kExternalAdapter };

ModelKind ParseModelKind(std::string_view text);
std::string_view ModelKindName(ModelKind kind);

struct EmbeddingModelRef {
  ModelKind kind = ModelKind::kAvgBaseline;
  std::string adapter_command;  // required for kExternalAdapter
  FeatureSpace feature_space = FeatureSpace::kMel;

  void Validate() const;
};

enum class Scorer { kCosine, kNegSqEuclidean };

Scorer ParseScorer(std::string_view text);
std::string_view ScorerName(Scorer s);

// Scores aligned 1:1 with a TrialList; higher means more likely same speaker.
struct ScoreSet {
  std::vector<double> scores;
  Scorer scorer = Scorer::kCosine;
};

/// Per-row mean over the segment's columns. Columns are accumulated in
/// ascending source-frame order with Neumaier summation, so the result does
/// not depend on how a strategy permuted them.
Embedding AvgEmbed(const Segment &segment);

/// Coordinate-wise mean of several embeddings of the same utterance.
Embedding MeanEmbedding(std::span<const Embedding> parts);

Embedding L2Normalized(const Embedding &e);

/// Throws kUndefinedScore for a zero vector under cosine, kInvalidEmbedding on
/// a dimension mismatch.
double ScorePair(const Embedding &a, const Embedding &b, Scorer scorer);

/// Throws kLookup when a trial utterance has no embedding.
ScoreSet ScorePairs(const EmbeddingMap &embeddings, const TrialList &trials, Scorer scorer,
                    int jobs = 1);

// Scores dump: CSV "enroll,test,is_target,score".
void WriteScoresCsv(const std::filesystem::path &path, const TrialList &trials,
                    const ScoreSet &scores);
std::pair<TrialList, ScoreSet> ReadScoresCsv(const std::filesystem::path &path);

// Embedding sets on disk: <stem>.sstf holds an (n, d) Tensor File and
// <stem>.csv lists "index,utterance_id,speaker_id" for its rows.
struct EmbeddingSet {
  std::vector<std::string> utterance_ids;
  std::vector<std::string> speaker_ids;
  std::vector<Embedding> embeddings;
};

void WriteEmbeddingSet(const std::filesystem::path &stem, const EmbeddingSet &set);
EmbeddingSet ReadEmbeddingSet(const std::filesystem::path &stem);
EmbeddingMap ToMap(const EmbeddingSet &set);

}  // namespace sstbench

#endif  // SSTBENCH_MODELS_H_
