// src/corpus.cc

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

#include "sstbench/corpus.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "sstbench/audio.h"
#include "sstbench/error.h"
#include "text_util.h"

namespace fs = std::filesystem;

namespace sstbench {
namespace {

constexpr std::string_view kManifestHeader =
    "speaker_id,utterance_id,audio_path,split,sentence_index";

bool IsAudioExtension(const fs::path &p) {
  std::string ext = text::ToLower(p.extension().string());
  return ext == ".wav" || ext == ".sph" || ext == ".nist";
}

// "SA1.WAV" -> "SA1"; also strips stacked extensions such as "SA1.WAV.wav".
std::string SentenceName(const fs::path &p) {
  std::string name = p.filename().string();
  return name.substr(0, name.find('.'));
}

void CheckField(const std::string &value, const char *what) {
  if (value.empty() || value.find_first_of(",\n\r") != std::string::npos)
    Fail(ErrorKind::kConfig, std::string(what) + " '" + value +
                                 "' is empty or contains a comma/newline");
}

void VerifyMagic(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path.string());
  std::uint8_t head[8] = {};
  in.read(reinterpret_cast<char *>(head), sizeof head);
  if (DetectContainer({head, static_cast<std::size_t>(in.gcount())}) ==
      AudioContainer::kUnknown)
    Fail(ErrorKind::kUnsupportedFormat,
         path.string() + ": unrecognized audio magic bytes");
}

std::vector<fs::path> ListAudioFiles(const fs::path &root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    Fail(ErrorKind::kIo, "cannot read corpus directory " + root.string());
  std::vector<fs::path> files;
  try {
    for (const auto &de : fs::recursive_directory_iterator(root)) {
      if (de.is_regular_file() && IsAudioExtension(de.path()))
        files.push_back(fs::relative(de.path(), root));
    }
  } catch (const fs::filesystem_error &e) {
    Fail(ErrorKind::kIo, e.what());
  }
  std::sort(files.begin(), files.end(), [](const fs::path &a, const fs::path &b) {
    return a.generic_string() < b.generic_string();
  });
  return files;
}

void AssignSentenceIndices(std::vector<ManifestEntry> &entries) {
  std::map<std::string, int> next;
  for (auto &e : entries) e.sentence_index = next[e.speaker_id]++;
}

void CheckUnique(const std::vector<ManifestEntry> &entries) {
  std::unordered_set<std::string> seen;
  for (const auto &e : entries)
    if (!seen.insert(e.utterance_id).second)
      Fail(ErrorKind::kConfig, "duplicate utterance id '" + e.utterance_id + "'");
}

Manifest ScanTimit(const fs::path &root, const ScanOptions &options) {
  Manifest m;
  m.root = root;
  for (const auto &rel : ListAudioFiles(root)) {
    std::vector<fs::path> parts(rel.begin(), rel.end());
    if (parts.size() < 3)
      Fail(ErrorKind::kConfig,
           "not a TIMIT tree (expected <split>/.../<speaker>/<file>): " +
               rel.generic_string());
    std::string split = text::ToLower(parts.front().string());
    if (split != "train" && split != "test")
      Fail(ErrorKind::kConfig, "not a TIMIT tree (top level must be TRAIN or TEST): " +
                                   rel.generic_string());
    std::string sentence = SentenceName(rel);
    if (options.exclude_sa && text::ToLower(sentence).rfind("sa", 0) == 0) continue;
    ManifestEntry e;
    e.speaker_id = parts[parts.size() - 2].string();
    e.utterance_id = e.speaker_id + "_" + sentence;
    e.audio_path = rel.generic_string();
    e.split = split == "train" ? Split::kTrain : Split::kTest;
    m.entries.push_back(std::move(e));
  }
  return m;
}

Manifest ScanFlat(const fs::path &root, const ScanOptions &options) {
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    Fail(ErrorKind::kIo, "cannot read corpus directory " + root.string());
  fs::path index = root / options.index_name;
  std::ifstream in(index);
  if (!in) Fail(ErrorKind::kIo, "cannot open index " + index.string());
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorKind::kEmptyCorpus, "empty index " + index.string());
  text::ChompCr(line);
  auto header = text::Split(line, ',');
  auto column = [&](std::string_view name) -> int {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };
  const int c_path = column("audio_path"), c_spk = column("speaker_id"),
            c_split = column("split"), c_utt = column("utterance_id");
  if (c_path < 0 || c_spk < 0)
    Fail(ErrorKind::kConfig, "index needs audio_path and speaker_id columns");

  Manifest m;
  m.root = root;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    text::ChompCr(line);
    if (text::Trim(line).empty()) continue;
    auto f = text::Split(line, ',');
    if (f.size() != header.size())
      Fail(ErrorKind::kConfig, index.string() + ":" + std::to_string(line_no) +
                                   ": wrong field count");
    ManifestEntry e;
    e.audio_path = fs::path(f[c_path]).generic_string();
    e.speaker_id = f[c_spk];
    e.split = c_split >= 0 ? ParseSplit(f[c_split]) : Split::kTest;
    if (c_utt >= 0) {
      e.utterance_id = f[c_utt];
    } else {
      std::string stem = fs::path(e.audio_path).replace_extension().generic_string();
      std::replace(stem.begin(), stem.end(), '/', '-');
      e.utterance_id = stem;
    }
    m.entries.push_back(std::move(e));
  }
  std::sort(m.entries.begin(), m.entries.end(),
            [](const ManifestEntry &a, const ManifestEntry &b) {
              return a.audio_path < b.audio_path;
            });
  return m;
}

}  // namespace

std::string_view SplitName(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

Split ParseSplit(std::string_view s) {
  std::string v = text::ToLower(text::Trim(s));
  if (v == "train") return Split::kTrain;
  if (v == "test") return Split::kTest;
  Fail(ErrorKind::kConfig, "unknown split '" + std::string(s) + "'");
}

CorpusLayout ParseLayout(std::string_view s) {
  if (s == "timit-tree") return CorpusLayout::kTimitTree;
  if (s == "flat-with-csv") return CorpusLayout::kFlatWithCsv;
  Fail(ErrorKind::kConfig, "unknown corpus layout '" + std::string(s) + "'");
}

TrialOrdering ParseTrialOrdering(std::string_view s) {
  if (s == "ordered") return TrialOrdering::kOrdered;
  if (s == "unordered") return TrialOrdering::kUnordered;
  Fail(ErrorKind::kConfig, "unknown trial ordering '" + std::string(s) + "'");
}

std::vector<const ManifestEntry *> Manifest::Select(Split split) const {
  std::vector<const ManifestEntry *> out;
  for (const auto &e : entries)
    if (e.split == split) out.push_back(&e);
  return out;
}

const ManifestEntry *Manifest::Find(std::string_view utterance_id) const {
  for (const auto &e : entries)
    if (e.utterance_id == utterance_id) return &e;
  return nullptr;
}

Manifest ScanCorpus(const fs::path &root, const ScanOptions &options) {
  Manifest m = options.layout == CorpusLayout::kTimitTree ? ScanTimit(root, options)
                                                          : ScanFlat(root, options);
  if (m.entries.empty())
    Fail(ErrorKind::kEmptyCorpus, "no audio files under " + root.string());
  AssignSentenceIndices(m.entries);
  CheckUnique(m.entries);
  for (const auto &e : m.entries) {
    CheckField(e.speaker_id, "speaker id");
    CheckField(e.utterance_id, "utterance id");
    CheckField(e.audio_path, "audio path");
    if (options.verify_audio) VerifyMagic(m.AbsolutePath(e));
  }
  return m;
}

void ValidateManifest(const Manifest &manifest) {
  CheckUnique(manifest.entries);
  for (const auto &e : manifest.entries) {
    AudioClip clip = ReadAudio(manifest.AbsolutePath(e));
    (void)clip;
  }
}

void WriteManifestCsv(std::ostream &out, const Manifest &manifest) {
  out << kManifestHeader << '\n';
  for (const auto &e : manifest.entries) {
    CheckField(e.speaker_id, "speaker id");
    CheckField(e.utterance_id, "utterance id");
    CheckField(e.audio_path, "audio path");
    out << e.speaker_id << ',' << e.utterance_id << ',' << e.audio_path << ','
        << SplitName(e.split) << ',' << e.sentence_index << '\n';
  }
}

void WriteManifestCsv(const fs::path &path, const Manifest &manifest) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + path.string());
  WriteManifestCsv(out, manifest);
  if (!out) Fail(ErrorKind::kIo, "short write to " + path.string());
}

Manifest ReadManifestCsv(std::istream &in, const fs::path &root) {
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorKind::kEmptyCorpus, "empty manifest");
  text::ChompCr(line);
  if (line != kManifestHeader)
    Fail(ErrorKind::kConfig, "manifest header must be '" +
                                 std::string(kManifestHeader) + "'");
  Manifest m;
  m.root = root;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    text::ChompCr(line);
    if (line.empty()) continue;
    auto f = text::Split(line, ',');
    ManifestEntry e;
    if (f.size() != 5 || !text::ParseInt(f[4], e.sentence_index))
      Fail(ErrorKind::kConfig, "manifest line " + std::to_string(line_no) + " is malformed");
    e.speaker_id = f[0];
    e.utterance_id = f[1];
    e.audio_path = f[2];
    e.split = ParseSplit(f[3]);
    m.entries.push_back(std::move(e));
  }
  CheckUnique(m.entries);
  return m;
}

Manifest ReadManifestCsv(const fs::path &path, std::optional<fs::path> root) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open manifest " + path.string());
  return ReadManifestCsv(in, root ? *root : path.parent_path());
}

std::size_t TrialList::CountTargets() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const Trial &t) { return t.is_target; }));
}

TrialList BuildTrials(std::vector<std::string> utterances,
                      std::vector<std::string> speakers, TrialOrdering ordering) {
  if (utterances.size() < 2)
    Fail(ErrorKind::kInsufficientData, "need at least 2 test utterances, have " +
                                           std::to_string(utterances.size()));
  TrialList list;
  list.ordering = ordering;
  const auto n = static_cast<std::uint32_t>(utterances.size());
  list.trials.reserve(TrialCount(n, ordering));
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = ordering == TrialOrdering::kOrdered ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      list.trials.push_back({i, j, speakers[i] == speakers[j]});
    }
  }
  list.utterances = std::move(utterances);
  list.speakers = std::move(speakers);
  return list;
}

TrialList BuildSvTrials(const Manifest &manifest, TrialOrdering ordering) {
  std::vector<std::string> utts, spks;
  for (const auto *e : manifest.Select(Split::kTest)) {
    utts.push_back(e->utterance_id);
    spks.push_back(e->speaker_id);
  }
  return BuildTrials(std::move(utts), std::move(spks), ordering);
}

void WriteTrialList(std::ostream &out, const TrialList &list) {
  for (const auto &t : list.trials)
    out << (t.is_target ? 1 : 0) << ' ' << list.utterances[t.enroll] << ' '
        << list.utterances[t.test] << '\n';
}

void WriteTrialList(const fs::path &path, const TrialList &list) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + path.string());
  WriteTrialList(out, list);
}

namespace {

// Shared by the native and VoxCeleb trial readers.
class TrialBuilder {
 public:
  std::uint32_t Intern(const std::string &utt, const std::string &spk) {
    auto [it, inserted] = index_.try_emplace(utt, static_cast<std::uint32_t>(list_.utterances.size()));
    if (inserted) {
      list_.utterances.push_back(utt);
      list_.speakers.push_back(spk);
    }
    return it->second;
  }
  void Add(std::uint32_t a, std::uint32_t b, bool target) {
    if (a == b) Fail(ErrorKind::kConfig, "trial pairs utterance '" +
                                             list_.utterances[a] + "' with itself");
    list_.trials.push_back({a, b, target});
  }
  TrialList Take() { return std::move(list_); }

 private:
  TrialList list_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

bool ParseLabel(const std::string &s) {
  if (s == "1") return true;
  if (s == "0") return false;
  Fail(ErrorKind::kDecode, "trial label must be 0 or 1, got '" + s + "'");
}

}  // namespace

TrialList ReadTrialList(const fs::path &path, const Manifest *manifest) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open trial list " + path.string());
  std::unordered_map<std::string, std::string> speaker_of;
  if (manifest)
    for (const auto &e : manifest->entries) speaker_of[e.utterance_id] = e.speaker_id;
  TrialBuilder b;
  std::string line;
  while (std::getline(in, line)) {
    auto f = text::SplitWhitespace(line);
    if (f.empty()) continue;
    if (f.size() != 3) Fail(ErrorKind::kDecode, "trial line must have 3 fields: " + line);
    bool target = ParseLabel(f[0]);
    auto spk = [&](const std::string &u) {
      if (!manifest) return std::string();
      auto it = speaker_of.find(u);
      if (it == speaker_of.end()) Fail(ErrorKind::kLookup, "unknown utterance '" + u + "'");
      return it->second;
    };
    std::string s1 = spk(f[1]), s2 = spk(f[2]);
    if (manifest && target != (s1 == s2))
      Fail(ErrorKind::kDecode, "trial label disagrees with speaker ids: " + line);
    b.Add(b.Intern(f[1], s1), b.Intern(f[2], s2), target);
  }
  return b.Take();
}

std::pair<Manifest, TrialList> ImportVoxCelebTrials(const fs::path &trial_file,
                                                    const fs::path &audio_root) {
  std::ifstream in(trial_file);
  if (!in) Fail(ErrorKind::kIo, "cannot open trial file " + trial_file.string());
  TrialBuilder b;
  std::map<std::string, ManifestEntry> by_path;
  auto intern = [&](const std::string &rel) {
    fs::path p(rel);
    std::string speaker = p.begin()->string();
    std::string utt = fs::path(p).replace_extension().generic_string();
    std::replace(utt.begin(), utt.end(), '/', '-');
    by_path.try_emplace(p.generic_string(),
                        ManifestEntry{speaker, utt, p.generic_string(), Split::kTest, 0});
    return std::pair{b.Intern(utt, speaker), speaker};
  };
  std::string line;
  while (std::getline(in, line)) {
    auto f = text::SplitWhitespace(line);
    if (f.empty()) continue;
    if (f.size() != 3) Fail(ErrorKind::kDecode, "trial line must have 3 fields: " + line);
    bool target = ParseLabel(f[0]);
    auto [a, sa] = intern(f[1]);
    auto [c, sc] = intern(f[2]);
    if (target != (sa == sc))
      Fail(ErrorKind::kDecode, "trial label disagrees with speaker ids: " + line);
    b.Add(a, c, target);
  }
  Manifest m;
  m.root = audio_root;
  for (auto &[path, entry] : by_path) m.entries.push_back(std::move(entry));
  if (m.entries.empty()) Fail(ErrorKind::kEmptyCorpus, "no trials in " + trial_file.string());
  AssignSentenceIndices(m.entries);
  TrialList list = b.Take();
  list.ordering = TrialOrdering::kOrdered;
  return {std::move(m), std::move(list)};
}

ClusterTaskSpec BuildClusterTask(const Manifest &manifest, int n_speakers,
                                 std::pair<int, int> part_sizes,
                                 SplitMixStream &rng, Split split) {
  auto [a, b] = part_sizes;
  if (n_speakers < 1 || a < 1 || b < 1)
    Fail(ErrorKind::kConfig, "cluster task needs n_speakers >= 1 and part sizes >= 1");
  std::map<std::string, std::vector<const ManifestEntry *>> by_speaker;
  for (const auto *e : manifest.Select(split)) by_speaker[e->speaker_id].push_back(e);
  if (static_cast<int>(by_speaker.size()) < n_speakers)
    Fail(ErrorKind::kInsufficientData,
         "cluster task wants " + std::to_string(n_speakers) + " speakers, corpus has " +
             std::to_string(by_speaker.size()));

  std::vector<std::string> speakers;
  for (const auto &[spk, _] : by_speaker) speakers.push_back(spk);
  rng.Shuffle(std::span(speakers));
  speakers.resize(static_cast<std::size_t>(n_speakers));

  ClusterTaskSpec spec;
  spec.n_speakers = n_speakers;
  for (const auto &spk : speakers) {
    auto sentences = by_speaker[spk];
    if (static_cast<int>(sentences.size()) < a + b)
      Fail(ErrorKind::kInfeasibleGrouping,
           "speaker " + spk + " has " + std::to_string(sentences.size()) +
               " sentences, needs " + std::to_string(a + b));
    std::stable_sort(sentences.begin(), sentences.end(),
                     [](const ManifestEntry *x, const ManifestEntry *y) {
                       return x->sentence_index < y->sentence_index;
                     });
    rng.Shuffle(std::span(sentences));
    ClusterGroup g;
    g.speaker_id = spk;
    for (int i = 0; i < a + b; ++i)
      (i < a ? g.part1 : g.part2).push_back(sentences[static_cast<std::size_t>(i)]->utterance_id);
    spec.groups.push_back(std::move(g));
  }
  return spec;
}

}  // namespace sstbench
