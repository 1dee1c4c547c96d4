// tests/corpus_test.cc

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

#include <map>
#include <set>
#include <sstream>

#include "sstbench/audio.h"
#include "sstbench/corpus.h"
#include "sstbench/rng.h"
#include "test_util.h"

namespace sstbench {
namespace {

using testing::TempDir;

void PutWav(const std::filesystem::path &p) {
  testing::WriteBytes(p, EncodeWav(testing::Sine(200, 0.05)));
}

// TIMIT-shaped tree: <split>/dr1/<speaker>/<sentence>.wav
void MakeTimit(const TempDir &dir, const std::string &split, int speakers, int sentences,
               const std::string &prefix = "spk") {
  for (int s = 0; s < speakers; ++s)
    for (int k = 0; k < sentences; ++k)
      PutWav(dir / (split + "/dr1/" + prefix + std::to_string(s) + "/sx" + std::to_string(k) + ".wav"));
}

Manifest SyntheticManifest(int speakers, int sentences, Split split = Split::kTest) {
  Manifest m;
  for (int s = 0; s < speakers; ++s)
    for (int k = 0; k < sentences; ++k) {
      std::string spk = testing::SpeakerName(s);
      m.entries.push_back({spk, spk + "_" + std::to_string(k), spk + "/" + std::to_string(k) + ".wav",
                           split, k});
    }
  return m;
}

TEST(CorpusTest, ScanTwoSpeakersSortedByPath) {
  TempDir dir;
  PutWav(dir / "test/dr1/mabc0/sx1.wav");
  PutWav(dir / "train/dr2/faaa0/si5.WAV");
  Manifest m = ScanCorpus(dir.path());
  ASSERT_EQ(m.entries.size(), 2u);
  EXPECT_EQ(m.entries[0].audio_path, "test/dr1/mabc0/sx1.wav");
  EXPECT_EQ(m.entries[0].speaker_id, "mabc0");
  EXPECT_EQ(m.entries[0].utterance_id, "mabc0_sx1");
  EXPECT_EQ(m.entries[0].split, Split::kTest);
  EXPECT_EQ(m.entries[1].split, Split::kTrain);
  EXPECT_EQ(m.entries[1].utterance_id, "faaa0_si5");
}

TEST(CorpusTest, ScanEmptyDirectoryIsEmptyCorpus) {
  TempDir dir;
  EXPECT_SST_ERROR(ScanCorpus(dir.path()), ErrorKind::kEmptyCorpus);
}

TEST(CorpusTest, ScanMissingDirectoryIsIoError) {
  TempDir dir;
  EXPECT_SST_ERROR(ScanCorpus(dir / "nope"), ErrorKind::kIo);
}

TEST(CorpusTest, ScanVerifiesMagicBytes) {
  TempDir dir;
  testing::WriteText(dir / "test/dr1/spk/sx1.wav", "JUNKJUNKJUNK");
  EXPECT_SST_ERROR(ScanCorpus(dir.path()), ErrorKind::kUnsupportedFormat);
  ScanOptions lax;
  lax.verify_audio = false;
  EXPECT_EQ(ScanCorpus(dir.path(), lax).entries.size(), 1u);
}

TEST(CorpusTest, ScanIsDeterministicAndSentenceIndicesPerSpeaker) {
  TempDir dir;
  MakeTimit(dir, "train", 3, 4);
  MakeTimit(dir, "test", 2, 5, "tst");
  std::ostringstream a, b;
  WriteManifestCsv(a, ScanCorpus(dir.path()));
  WriteManifestCsv(b, ScanCorpus(dir.path()));
  EXPECT_EQ(a.str(), b.str());
  Manifest m = ScanCorpus(dir.path());
  EXPECT_EQ(m.entries.size(), 22u);
  std::map<std::string, std::set<int>> idx;
  for (const auto &e : m.entries) idx[e.speaker_id].insert(e.sentence_index);
  for (const auto &[spk, s] : idx) {
    EXPECT_EQ(*s.begin(), 0);
    EXPECT_EQ(static_cast<int>(s.size()), *s.rbegin() + 1) << spk;
  }
}

TEST(CorpusTest, ExcludeSaFilter) {
  TempDir dir;
  PutWav(dir / "test/dr1/spk/sa1.wav");
  PutWav(dir / "test/dr1/spk/sa2.wav");
  PutWav(dir / "test/dr1/spk/sx3.wav");
  EXPECT_EQ(ScanCorpus(dir.path()).entries.size(), 3u);
  ScanOptions opt;
  opt.exclude_sa = true;
  EXPECT_EQ(ScanCorpus(dir.path(), opt).entries.size(), 1u);
}

TEST(CorpusTest, FlatWithCsvLayout) {
  TempDir dir;
  PutWav(dir / "b/x.wav");
  PutWav(dir / "a/y.wav");
  testing::WriteText(dir / "index.csv", "audio_path,speaker_id,split\nb/x.wav,spkB,test\na/y.wav,spkA,train\n");
  ScanOptions opt;
  opt.layout = CorpusLayout::kFlatWithCsv;
  Manifest m = ScanCorpus(dir.path(), opt);
  ASSERT_EQ(m.entries.size(), 2u);
  EXPECT_EQ(m.entries[0].audio_path, "a/y.wav");
  EXPECT_EQ(m.entries[0].utterance_id, "a-y");
  EXPECT_EQ(m.entries[0].split, Split::kTrain);
  EXPECT_EQ(m.entries[1].speaker_id, "spkB");
}

TEST(CorpusTest, ManifestCsvRoundTrip) {
  TempDir dir;
  MakeTimit(dir, "test", 2, 3);
  Manifest m = ScanCorpus(dir.path());
  WriteManifestCsv(dir / "manifest.csv", m);
  std::string text = testing::ReadText(dir / "manifest.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')), "speaker_id,utterance_id,audio_path,split,sentence_index");
  Manifest back = ReadManifestCsv(dir / "manifest.csv");
  EXPECT_EQ(back.entries, m.entries);
  EXPECT_EQ(back.root, dir.path());
  ValidateManifest(back);
}

TEST(CorpusTest, ValidateManifestRejectsDuplicatesAndMissingFiles) {
  TempDir dir;
  Manifest m = SyntheticManifest(1, 1);
  m.root = dir.path();
  EXPECT_SST_ERROR(ValidateManifest(m), ErrorKind::kIo);
  PutWav(dir / m.entries[0].audio_path);
  ValidateManifest(m);
  m.entries.push_back(m.entries[0]);
  EXPECT_SST_ERROR(ValidateManifest(m), ErrorKind::kConfig);
}

TEST(CorpusTest, TrialCountClosedFormExhaustive) {
  for (int n = 2; n <= 100; ++n) {
    Manifest m = SyntheticManifest(n, 1);
    EXPECT_EQ(BuildSvTrials(m, TrialOrdering::kOrdered).size(), static_cast<std::size_t>(n * (n - 1)));
    EXPECT_EQ(BuildSvTrials(m, TrialOrdering::kUnordered).size(),
              static_cast<std::size_t>(n * (n - 1) / 2));
  }
}

TEST(CorpusTest, TimitScaleTrialCounts) {
  Manifest m = SyntheticManifest(168, 10);
  TrialList ordered = BuildSvTrials(m, TrialOrdering::kOrdered);
  EXPECT_EQ(ordered.size(), 2820720u);
  EXPECT_EQ(ordered.size(), 1680u * 1679u);
  EXPECT_EQ(ordered.CountTargets(), 168u * 10u * 9u);
  EXPECT_EQ(BuildSvTrials(m, TrialOrdering::kUnordered).size(), 1410360u);
}

TEST(CorpusTest, TrialInvariants) {
  Manifest m = SyntheticManifest(4, 3);
  TrialList t = BuildSvTrials(m);
  for (const Trial &tr : t.trials) {
    EXPECT_NE(tr.enroll, tr.test);
    EXPECT_EQ(tr.is_target, t.speakers[tr.enroll] == t.speakers[tr.test]);
  }
}

TEST(CorpusTest, TwoSameSpeakerUtterancesOrdered) {
  TrialList t = BuildSvTrials(SyntheticManifest(1, 2));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_TRUE(t.trials[0].is_target);
  EXPECT_TRUE(t.trials[1].is_target);
}

TEST(CorpusTest, TooFewTestUtterances) {
  EXPECT_SST_ERROR(BuildSvTrials(SyntheticManifest(1, 1)), ErrorKind::kInsufficientData);
  EXPECT_SST_ERROR(BuildSvTrials(SyntheticManifest(3, 3, Split::kTrain)),
                   ErrorKind::kInsufficientData);
}

TEST(CorpusTest, TrialListFileRoundTrip) {
  TempDir dir;
  TrialList t = BuildSvTrials(SyntheticManifest(3, 2), TrialOrdering::kUnordered);
  WriteTrialList(dir / "trials.txt", t);
  EXPECT_EQ(testing::ReadText(dir / "trials.txt").substr(0, 14), "1 s00_0 s00_1\n");
  Manifest m = SyntheticManifest(3, 2);
  TrialList back = ReadTrialList(dir / "trials.txt", &m);
  ASSERT_EQ(back.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(back.utterances[back.trials[i].enroll], t.utterances[t.trials[i].enroll]);
    EXPECT_EQ(back.utterances[back.trials[i].test], t.utterances[t.trials[i].test]);
    EXPECT_EQ(back.trials[i].is_target, t.trials[i].is_target);
  }
}

TEST(CorpusTest, ImportVoxCelebTrials) {
  TempDir dir;
  testing::WriteText(dir / "veri.txt",
                     "1 id10270/x6uYqmx31kE/00001.wav id10270/8jEAjG6SegY/00008.wav\n"
                     "0 id10270/x6uYqmx31kE/00001.wav id10300/ize_eiCFEg0/00003.wav\n");
  auto [m, t] = ImportVoxCelebTrials(dir / "veri.txt", dir / "wav");
  EXPECT_EQ(m.entries.size(), 3u);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_TRUE(t.trials[0].is_target);
  EXPECT_FALSE(t.trials[1].is_target);
  EXPECT_EQ(t.utterances[t.trials[0].enroll], "id10270-x6uYqmx31kE-00001");
  EXPECT_EQ(t.speakers[t.trials[1].test], "id10300");
}

TEST(CorpusTest, ClusterTaskPaperShape) {
  Manifest m = SyntheticManifest(50, 10);
  SplitMixStream rng(11);
  ClusterTaskSpec spec = BuildClusterTask(m, 40, {2, 8}, rng);
  EXPECT_EQ(spec.groups.size(), 40u);
  EXPECT_EQ(spec.CompositeCount(), 80u);
  EXPECT_EQ(spec.PairwiseComparisons(), 6400u);
  std::set<std::string> speakers;
  for (const auto &g : spec.groups) {
    speakers.insert(g.speaker_id);
    EXPECT_EQ(g.part1.size(), 2u);
    EXPECT_EQ(g.part2.size(), 8u);
    std::set<std::string> all(g.part1.begin(), g.part1.end());
    all.insert(g.part2.begin(), g.part2.end());
    EXPECT_EQ(all.size(), 10u);
    for (const auto &u : all) EXPECT_EQ(m.Find(u)->speaker_id, g.speaker_id);
  }
  EXPECT_EQ(speakers.size(), 40u);
}

TEST(CorpusTest, ClusterTaskDeterminismAndSeedVariation) {
  Manifest m = SyntheticManifest(20, 10);
  SplitMixStream a(5), b(5), c(6);
  auto sa = BuildClusterTask(m, 10, {3, 4}, a);
  auto sb = BuildClusterTask(m, 10, {3, 4}, b);
  auto sc = BuildClusterTask(m, 10, {3, 4}, c);
  EXPECT_EQ(sa, sb);
  EXPECT_NE(sa, sc);
  for (const auto &g : sc.groups) {
    EXPECT_EQ(g.part1.size(), 3u);
    EXPECT_EQ(g.part2.size(), 4u);
    for (const auto &u : g.part1)
      EXPECT_EQ(std::find(g.part2.begin(), g.part2.end(), u), g.part2.end());
  }
}

TEST(CorpusTest, ClusterTaskSingletonsAndInfeasible) {
  SplitMixStream rng(1);
  auto spec = BuildClusterTask(SyntheticManifest(1, 2), 1, {1, 1}, rng);
  ASSERT_EQ(spec.groups.size(), 1u);
  EXPECT_EQ(spec.groups[0].part1.size(), 1u);
  EXPECT_NE(spec.groups[0].part1[0], spec.groups[0].part2[0]);
  EXPECT_SST_ERROR(BuildClusterTask(SyntheticManifest(40, 9), 40, {2, 8}, rng),
                   ErrorKind::kInfeasibleGrouping);
  EXPECT_SST_ERROR(BuildClusterTask(SyntheticManifest(5, 10), 6, {2, 8}, rng),
                   ErrorKind::kInsufficientData);
}

}  // namespace
}  // namespace sstbench
