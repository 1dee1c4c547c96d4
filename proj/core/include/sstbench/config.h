// include/sstbench/config.h

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

#ifndef SSTBENCH_CONFIG_H_
#define SSTBENCH_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sstbench/frontend.h"
#include "sstbench/metrics.h"
#include "sstbench/models.h"
#include "sstbench/scramble.h"
#include "sstbench/vocoder.h"

namespace sstbench {

// Flat key/value configuration. File syntax:
//
//   # comment
//   key = value
//   [section]          # prefixes following keys with "section."
//   name = "quoted"    # surrounding double quotes are stripped
//
// Later assignments win, so `--set key=value` overrides are applied last.
class KeyValueConfig {
 public:
  static KeyValueConfig Parse(std::string_view text, std::string_view origin = "<string>");
  static KeyValueConfig Load(const std::filesystem::path &path);

  /// Applies "key=value".
  void Set(std::string_view assignment);
  void Set(const std::string &key, const std::string &value) { values_[key] = value; }

  bool Has(const std::string &key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string> &values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

enum class Task { kSV, kSC };

std::string_view TaskName(Task t);
Task ParseTask(std::string_view text);
/// "EER" for SV, "MR" for SC.
std::string_view MetricName(Task t);

enum class MrDefinition { kMatching, kMajority };

struct ExperimentConfig {
  std::filesystem::path manifest_path;
  std::optional<std::filesystem::path> corpus_root;
  std::string corpus_name;
  std::optional<std::filesystem::path> cache_dir;
  bool allow_decimation = false;

  FrontendConfig frontend;
  double segment_t_train = 1.0;
  double segment_t_eval = 1.0;
  std::vector<DrawStrategy> strategies_train{DrawStrategy::kOS, DrawStrategy::kSS,
                                             DrawStrategy::kSU};
  std::vector<DrawStrategy> strategies_test{DrawStrategy::kOS, DrawStrategy::kSS,
                                            DrawStrategy::kSU};
  EmbeddingModelRef model;
  std::string model_name = "avg-baseline";
  std::vector<Task> tasks{Task::kSV};
  int runs = 5;
  std::optional<std::uint64_t> master_seed;
  int epochs = 128;
  int segments_per_utterance = 1;

  Scorer scorer = Scorer::kCosine;
  int sc_speakers = 40;
  std::pair<int, int> sc_part_sizes{2, 8};
  Linkage sc_linkage = Linkage::kComplete;
  Distance sc_distance = Distance::kCosine;
  MrDefinition mr_definition = MrDefinition::kMatching;

  std::optional<VocoderConfig> vocode;
  // False: carrier noise is seeded from master_seed instead of vocoder.noise_seed.
  bool vocoder_seed_explicit = false;

  double adapter_timeout_s = 3600.0;
  std::filesystem::path adapter_workdir = "adapter_work";
  std::map<std::string, std::string> adapter_params{{"batch_size", "100"}};

  std::set<std::string> report_formats{"csv", "markdown", "html"};
  std::filesystem::path output_dir = "report";
  int jobs = 0;

  /// Builds from key/values; unknown keys and bad values are config errors.
  /// Relative paths are resolved against `base_dir`.
  static ExperimentConfig FromKeyValues(const KeyValueConfig &kv,
                                        const std::filesystem::path &base_dir = {});

  void Validate() const;

  /// Canonical "key = value" rendering of every field, one per line, sorted.
  std::string Canonical() const;
  /// 16 hex digits of a hash over Canonical().
  std::string Digest() const;
};

std::string ToHex64(std::uint64_t v);

}  // namespace sstbench

#endif  // SSTBENCH_CONFIG_H_
