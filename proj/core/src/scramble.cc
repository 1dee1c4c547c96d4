// src/scramble.cc

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

#include "sstbench/scramble.h"

#include <cmath>
#include <numeric>
#include <ostream>

#include "sstbench/error.h"

namespace sstbench {

std::string_view StrategyName(DrawStrategy s) {
  switch (s) {
    case DrawStrategy::kOS: return "OS";
    case DrawStrategy::kSS: return "SS";
    case DrawStrategy::kSU: return "SU";
  }
  return "?";
}

DrawStrategy ParseStrategy(std::string_view s) {
  if (s == "OS" || s == "os") return DrawStrategy::kOS;
  if (s == "SS" || s == "ss") return DrawStrategy::kSS;
  if (s == "SU" || s == "su") return DrawStrategy::kSU;
  Fail(ErrorKind::kConfig, "unknown draw strategy '" + std::string(s) + "'");
}

std::uint64_t DrawSeed(std::uint64_t master_seed, const SeedPath &path) {
  const bool eval = path.epoch < 0;
  const auto index = static_cast<std::uint64_t>(eval ? -1 - path.epoch : path.epoch);
  return DeriveSeed(master_seed,
                    {path.run, Tag(eval ? StreamRole::kEvalDraw : StreamRole::kTrainDraw),
                     index, Fnv1a64(path.utterance_id)});
}

std::size_t SegmentFrames(double t_seconds, double hop_seconds) {
  if (!(t_seconds > 0.0) || !(hop_seconds > 0.0))
    Fail(ErrorKind::kConfig, "segment length and hop must be positive");
  return static_cast<std::size_t>(std::llround(t_seconds / hop_seconds));
}

FrameSelection SelectFrames(std::size_t n_frames, DrawStrategy strategy,
                            std::size_t length, SplitMixStream &rng) {
  if (n_frames == 0) Fail(ErrorKind::kEmptyUtterance, "utterance has no frames");
  if (length == 0) Fail(ErrorKind::kConfig, "segment length must be >= 1 frame");

  const std::size_t cycles = n_frames >= length ? 1 : (length + n_frames - 1) / n_frames;
  std::vector<std::uint32_t> sequence(n_frames * cycles);
  for (std::size_t i = 0; i < sequence.size(); ++i)
    sequence[i] = static_cast<std::uint32_t>(i % n_frames);
  const std::size_t starts = sequence.size() - length + 1;

  FrameSelection sel;
  switch (strategy) {
    case DrawStrategy::kOS:
    case DrawStrategy::kSS: {
      sel.window_start = static_cast<std::size_t>(rng.UniformIndex(starts));
      auto first = sequence.begin() + static_cast<std::ptrdiff_t>(sel.window_start);
      sel.permutation.assign(first, first + static_cast<std::ptrdiff_t>(length));
      if (strategy == DrawStrategy::kSS) rng.Shuffle(std::span(sel.permutation));
      break;
    }
    case DrawStrategy::kSU: {
      rng.Shuffle(std::span(sequence));
      sel.window_start = static_cast<std::size_t>(rng.UniformIndex(starts));
      auto first = sequence.begin() + static_cast<std::ptrdiff_t>(sel.window_start);
      sel.permutation.assign(first, first + static_cast<std::ptrdiff_t>(length));
      break;
    }
  }
  return sel;
}

Segment DrawSegment(const Spectrogram &spec, DrawStrategy strategy, std::size_t length,
                    SplitMixStream &rng) {
  if (spec.n_frames() == 0)
    Fail(ErrorKind::kEmptyUtterance, "utterance '" + spec.utterance_id + "' has no frames");
  FrameSelection sel = SelectFrames(spec.n_frames(), strategy, length, rng);
  Segment seg;
  seg.data = FeatureMatrix(spec.n_bins(), length);
  for (std::size_t j = 0; j < length; ++j) {
    auto src = spec.data.Column(sel.permutation[j]);
    std::copy(src.begin(), src.end(), seg.data.Column(j).begin());
  }
  seg.source_utterance = spec.utterance_id;
  seg.strategy = strategy;
  seg.window_start = sel.window_start;
  seg.permutation = std::move(sel.permutation);
  return seg;
}

Segment DrawSegment(const Spectrogram &spec, DrawStrategy strategy, std::size_t length,
                    std::uint64_t master_seed, const SeedPath &path) {
  SplitMixStream rng(DrawSeed(master_seed, path));
  Segment seg = DrawSegment(spec, strategy, length, rng);
  seg.seed_path = path;
  return seg;
}

void ForEachDraw(std::span<const UtteranceFrames> utterances, std::size_t epochs,
                 DrawStrategy strategy, std::size_t length, std::uint64_t master_seed,
                 std::uint32_t run_index,
                 const std::function<void(const DrawRecord &)> &visit) {
  DrawRecord rec;
  rec.run = run_index;
  rec.strategy = strategy;
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    rec.epoch = static_cast<std::uint32_t>(epoch);
    for (const auto &u : utterances) {
      SplitMixStream rng(DrawSeed(
          master_seed, {run_index, static_cast<std::int64_t>(epoch), u.utterance_id}));
      FrameSelection sel = SelectFrames(u.n_frames, strategy, length, rng);
      rec.utterance_id = u.utterance_id;
      rec.window_start = sel.window_start;
      rec.permutation = std::move(sel.permutation);
      visit(rec);
    }
  }
}

std::vector<DrawRecord> BuildDrawPlan(std::span<const UtteranceFrames> utterances,
                                      std::size_t epochs, DrawStrategy strategy,
                                      std::size_t length, std::uint64_t master_seed,
                                      std::uint32_t run_index) {
  std::vector<DrawRecord> plan;
  plan.reserve(epochs * utterances.size());
  ForEachDraw(utterances, epochs, strategy, length, master_seed, run_index,
              [&](const DrawRecord &r) { plan.push_back(r); });
  return plan;
}

std::string DrawRecordCsvLine(const DrawRecord &r) {
  std::string line = std::to_string(r.run) + ',' + std::to_string(r.epoch) + ',' +
                     r.utterance_id + ',' + std::string(StrategyName(r.strategy)) + ',' +
                     std::to_string(r.window_start) + ',';
  for (std::size_t i = 0; i < r.permutation.size(); ++i) {
    if (i) line += '-';
    line += std::to_string(r.permutation[i]);
  }
  return line;
}

void WriteDrawPlanCsv(std::ostream &out, std::span<const DrawRecord> plan) {
  out << "run,epoch,utterance_id,strategy,window_start,permutation\n";
  for (const auto &r : plan) out << DrawRecordCsvLine(r) << '\n';
}

std::uint64_t DrawPlanDigest(std::span<const UtteranceFrames> utterances,
                             std::size_t epochs, DrawStrategy strategy,
                             std::size_t length, std::uint64_t master_seed,
                             std::uint32_t run_index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto absorb = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  absorb("run,epoch,utterance_id,strategy,window_start,permutation\n");
  ForEachDraw(utterances, epochs, strategy, length, master_seed, run_index,
              [&](const DrawRecord &r) {
                absorb(DrawRecordCsvLine(r));
                absorb("\n");
              });
  return h;
}

}  // namespace sstbench
