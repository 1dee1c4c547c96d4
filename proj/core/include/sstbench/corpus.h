// include/sstbench/corpus.h

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

#ifndef SSTBENCH_CORPUS_H_
#define SSTBENCH_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sstbench/rng.h"

namespace sstbench {

enum class Split { kTrain, kTest };

std::string_view SplitName(Split split);
Split ParseSplit(std::string_view text);

struct ManifestEntry {
  std::string speaker_id;
  std::string utterance_id;
  std::string audio_path;  // relative to Manifest::root, '/'-separated
  Split split = Split::kTest;
  int sentence_index = 0;  // position among the speaker's sentences

  bool operator==(const ManifestEntry &) const = default;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::filesystem::path root;

  std::filesystem::path AbsolutePath(const ManifestEntry &e) const {
    return root / e.audio_path;
  }
  /// Entries of one split, in manifest order.
  std::vector<const ManifestEntry *> Select(Split split) const;
  const ManifestEntry *Find(std::string_view utterance_id) const;
};

enum class CorpusLayout { kTimitTree, kFlatWithCsv };

CorpusLayout ParseLayout(std::string_view text);

struct ScanOptions {
  CorpusLayout layout = CorpusLayout::kTimitTree;
  // TIMIT "SA" dialect calibration sentences are kept unless this is set.
  bool exclude_sa = false;
  // Check every file's magic bytes while scanning.
  bool verify_audio = true;
  // flat-with-csv: name of the index file inside the corpus root. Columns:
  // audio_path,speaker_id[,split][,utterance_id]
  std::string index_name = "index.csv";
};

/// Builds a manifest from a corpus directory. Entries are sorted
/// lexicographically by relative path.
///
/// timit-tree expects <root>/{TRAIN,TEST}/<dialect>/<speaker>/<sentence>.{WAV,wav,sph}
/// (directory names are matched case-insensitively). The utterance id is
/// "<speaker>_<sentence>".
Manifest ScanCorpus(const std::filesystem::path &root,
                    const ScanOptions &options = {});

/// Checks id uniqueness and that every file exists and decodes.
void ValidateManifest(const Manifest &manifest);

// Manifest CSV: header "speaker_id,utterance_id,audio_path,split,sentence_index".
void WriteManifestCsv(std::ostream &out, const Manifest &manifest);
void WriteManifestCsv(const std::filesystem::path &path, const Manifest &manifest);
Manifest ReadManifestCsv(std::istream &in, const std::filesystem::path &root);
/// `root` defaults to the directory containing the CSV.
Manifest ReadManifestCsv(const std::filesystem::path &path,
                         std::optional<std::filesystem::path> root = std::nullopt);

enum class TrialOrdering { kOrdered, kUnordered };

TrialOrdering ParseTrialOrdering(std::string_view text);

struct Trial {
  std::uint32_t enroll = 0;  // indices into TrialList::utterances
  std::uint32_t test = 0;
  bool is_target = false;

  bool operator==(const Trial &) const = default;
};

// Trials reference utterances by index so that multi-million trial sets stay
// compact.
struct TrialList {
  std::vector<std::string> utterances;
  std::vector<std::string> speakers;  // aligned with utterances
  std::vector<Trial> trials;
  TrialOrdering ordering = TrialOrdering::kOrdered;

  std::size_t size() const noexcept { return trials.size(); }
  std::size_t CountTargets() const;
};

/// Every cross pair among test-split utterances, in manifest order:
/// ordered -> (i, j) for all i != j; unordered -> i < j.
TrialList BuildSvTrials(const Manifest &manifest,
                        TrialOrdering ordering = TrialOrdering::kOrdered);

/// Same construction over an explicit (utterance, speaker) list.
TrialList BuildTrials(std::vector<std::string> utterances,
                      std::vector<std::string> speakers, TrialOrdering ordering);

constexpr std::uint64_t TrialCount(std::uint64_t n, TrialOrdering ordering) {
  return ordering == TrialOrdering::kOrdered ? n * (n - 1) : n * (n - 1) / 2;
}

// Trial-list text file: "is_target(0|1) enroll_utt test_utt" per line.
void WriteTrialList(std::ostream &out, const TrialList &trials);
void WriteTrialList(const std::filesystem::path &path, const TrialList &trials);
/// Speakers are resolved through `manifest` when given; otherwise left empty.
TrialList ReadTrialList(const std::filesystem::path &path,
                        const Manifest *manifest = nullptr);

/// Imports a VoxCeleb-style trial file ("label path1 path2" per line, paths
/// relative to `audio_root`, speaker = first path component) as a test-split
/// manifest plus the trial list it describes.
std::pair<Manifest, TrialList> ImportVoxCelebTrials(
    const std::filesystem::path &trial_file,
    const std::filesystem::path &audio_root);

struct ClusterGroup {
  std::string speaker_id;
  std::vector<std::string> part1;  // utterance ids
  std::vector<std::string> part2;

  bool operator==(const ClusterGroup &) const = default;
};

// Two composite utterances per speaker, each a concatenation of a disjoint
// sentence set.
struct ClusterTaskSpec {
  std::vector<ClusterGroup> groups;
  int n_speakers = 0;

  std::size_t CompositeCount() const { return 2 * groups.size(); }
  /// Entries of the full (composite x composite) distance matrix.
  std::size_t PairwiseComparisons() const {
    return CompositeCount() * CompositeCount();
  }
  static std::string CompositeId(const ClusterGroup &group, int part) {
    return group.speaker_id + "#" + std::to_string(part);
  }

  bool operator==(const ClusterTaskSpec &) const = default;
};

/// Samples `n_speakers` speakers of `split` and, for each, two disjoint
/// sentence groups of sizes part_sizes.first / part_sizes.second.
ClusterTaskSpec BuildClusterTask(const Manifest &manifest, int n_speakers,
                                 std::pair<int, int> part_sizes,
                                 SplitMixStream &rng,
                                 Split split = Split::kTest);

}  // namespace sstbench

#endif  // SSTBENCH_CORPUS_H_
