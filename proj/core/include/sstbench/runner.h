// include/sstbench/runner.h

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


#ifndef SSTBENCH_RUNNER_H_
#define SSTBENCH_RUNNER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "sstbench/adapter.h"
#include "sstbench/config.h"
#include "sstbench/corpus.h"
#include "sstbench/frontend.h"
#include "sstbench/models.h"
#include "sstbench/scramble.h"

namespace sstbench {

/// Receives one machine-readable "key=value ..." line per event.
using LogSink = std::function<void(const std::string &line)>;

// Spectrograms for every manifest entry, keyed by utterance id.
class FeatureStore {
 public:
  FeatureStore() = default;
  explicit FeatureStore(Manifest manifest) : manifest_(std::move(manifest)) {}

  const Manifest &manifest() const noexcept { return manifest_; }
  void Add(Spectrogram spec);
  bool Contains(const std::string &utterance_id) const;
  /// Throws kLookup for an unknown utterance.
  const Spectrogram &Get(const std::string &utterance_id) const;
  std::size_t size() const noexcept { return features_.size(); }

 private:
  Manifest manifest_;
  std::unordered_map<std::string, Spectrogram> features_;
};

/// Base seed for vocoder carrier noise: vocoder.noise_seed when given,
/// otherwise the master seed.
std::uint64_t VocoderBaseSeed(const ExperimentConfig &config, std::uint64_t master_seed);

/// Digest naming the feature cache directory; covers the frontend settings
/// and, when vocoding, the vocoder settings and its base seed.
std::string FeatureCacheKey(const ExperimentConfig &config, std::uint64_t master_seed);

/// Reads the manifest, decodes, optionally vocodes and featurizes every entry.
/// With a cache directory, spectrograms are stored as
/// <cache>/<FeatureCacheKey>/<hash of utterance id and path>.sstf and reused.
FeatureStore PrepareFeatures(const ExperimentConfig &config, std::uint64_t master_seed,
                             const LogSink &log = {});

/// Columns `permutation` of `spec`, in that order.
FeatureMatrix GatherColumns(const FeatureMatrix &spec, std::span<const std::uint32_t> permutation);

struct CellKey {
  Task task = Task::kSV;
  DrawStrategy train = DrawStrategy::kOS;
  DrawStrategy test = DrawStrategy::kOS;
  auto operator<=>(const CellKey &) const = default;
};

struct CellResult {
  std::vector<double> per_run;  // metric in percent, one value per run
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation; 0 when there is one run
  std::string error;  // nonempty when the cell failed

  bool ok() const noexcept { return error.empty(); }
  /// Fills mean and sd from per_run.
  void Aggregate();
};

struct MatrixReport {
  std::string model_name;
  std::string corpus_name;
  std::string config_digest;
  std::uint64_t master_seed = 0;
  int runs = 0;
  std::vector<Task> tasks;
  std::vector<DrawStrategy> strategies_train;
  std::vector<DrawStrategy> strategies_test;
  std::map<CellKey, CellResult> cells;

  std::size_t FailedCells() const;
};

class ExperimentRunner {
 public:
  /// `store` must cover every manifest entry the tasks touch.
  ExperimentRunner(ExperimentConfig config, const FeatureStore &store,
                   std::uint64_t master_seed, LogSink log = {});

  /// Metric of one (train, test, task, run) condition, in percent.
  double RunCondition(DrawStrategy train, DrawStrategy test, Task task, int run);

  /// Every configured cell over all runs. A failing cell records its error
  /// and the remaining cells proceed.
  MatrixReport RunMatrix();

  /// Digest of the training draw plan for (train, run); depends only on the
  /// training utterances, the strategy, the run and the master seed.
  std::uint64_t TrainPlanDigest(DrawStrategy train, int run) const;

  /// Per-utterance embeddings of the test split under `test`, using the
  /// model fitted for (train, run).
  EmbeddingMap EmbedTestSplit(DrawStrategy train, DrawStrategy test, int run);

  const TrialList &sv_trials();

  struct FittedModel {
    std::uint64_t plan_digest = 0;
    std::optional<ModelState> adapter_state;  // set for external adapters
  };

  /// Fits once per (train, run) and caches the result. The baseline needs no
  /// training data, so for it only the plan digest is computed.
  const FittedModel &Fit(DrawStrategy train, int run);

 private:
  EmbeddingMap Embed(const FittedModel &model, DrawStrategy train, DrawStrategy test, int run,
                     const std::vector<const Spectrogram *> &specs, std::string_view purpose);
  double EvaluateSv(const EmbeddingMap &embeddings);
  double RunSc(DrawStrategy train, DrawStrategy test, int run);
  std::vector<UtteranceFrames> TrainUtterances() const;
  std::filesystem::path AdapterDir(DrawStrategy train, int run) const;
  AdapterOptions AdapterOpts(int run) const;
  void Log(const std::string &line) const;

  ExperimentConfig config_;
  const FeatureStore &store_;
  std::uint64_t master_seed_;
  LogSink log_;
  std::size_t train_length_;
  std::size_t eval_length_;
  std::optional<TrialList> sv_trials_;
  std::map<std::pair<DrawStrategy, int>, FittedModel> fitted_;
};

}  // namespace sstbench

#endif  // SSTBENCH_RUNNER_H_
