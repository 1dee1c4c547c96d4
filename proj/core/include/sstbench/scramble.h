// include/sstbench/scramble.h

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

#ifndef SSTBENCH_SCRAMBLE_H_
#define SSTBENCH_SCRAMBLE_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sstbench/feature_matrix.h"
#include "sstbench/frontend.h"
#include "sstbench/rng.h"

namespace sstbench {

// Segment-drawing strategies:
//   OS  original segment: a contiguous window in original frame order.
//   SS  shuffled within segment: the OS window with its columns permuted.
//   SU  shuffled within utterance: all frames permuted, then a window cut.
enum class DrawStrategy { kOS, kSS, kSU };

inline constexpr DrawStrategy kAllStrategies[] = {DrawStrategy::kOS, DrawStrategy::kSS,
                                                  DrawStrategy::kSU};

std::string_view StrategyName(DrawStrategy s);
DrawStrategy ParseStrategy(std::string_view text);

/// Identifies the stream a segment was drawn from. Training draws use
/// epoch >= 0; evaluation draw k of an utterance uses epoch = -1 - k.
struct SeedPath {
  std::uint32_t run = 0;
  std::int64_t epoch = 0;
  std::string utterance_id;

  bool operator==(const SeedPath &) const = default;
};

/// Seed of the stream for one draw record.
std::uint64_t DrawSeed(std::uint64_t master_seed, const SeedPath &path);

/// L = round(t / hop).
std::size_t SegmentFrames(double t_seconds, double hop_seconds);

struct FrameSelection {
  std::size_t window_start = 0;
  std::vector<std::uint32_t> permutation;  // source frame per segment column
};

/// Chooses source frames for one segment. Stream consumption order is fixed:
/// OS draws the start; SS draws the start then shuffles the window; SU
/// shuffles the whole index sequence then draws the start. When the utterance
/// is shorter than L the index sequence is 0..n-1 cycled ceil(L/n) times.
FrameSelection SelectFrames(std::size_t n_frames, DrawStrategy strategy,
                            std::size_t length, SplitMixStream &rng);

struct Segment {
  FeatureMatrix data;  // bins x L
  std::string source_utterance;
  DrawStrategy strategy = DrawStrategy::kOS;
  std::size_t window_start = 0;
  std::vector<std::uint32_t> permutation;
  SeedPath seed_path;
};

/// Copies the selected columns bit-for-bit out of `spec`.
Segment DrawSegment(const Spectrogram &spec, DrawStrategy strategy, std::size_t length,
                    SplitMixStream &rng);
Segment DrawSegment(const Spectrogram &spec, DrawStrategy strategy, std::size_t length,
                    std::uint64_t master_seed, const SeedPath &path);

struct UtteranceFrames {
  std::string utterance_id;
  std::size_t n_frames = 0;
};

struct DrawRecord {
  std::uint32_t run = 0;
  std::uint32_t epoch = 0;
  std::string utterance_id;
  DrawStrategy strategy = DrawStrategy::kOS;
  std::size_t window_start = 0;
  std::vector<std::uint32_t> permutation;

  bool operator==(const DrawRecord &) const = default;
};

/// epochs x |utterances| records, epoch-major, utterances in the given order.
/// Each record's stream is DrawSeed(master_seed, {run, epoch, utterance}).
std::vector<DrawRecord> BuildDrawPlan(std::span<const UtteranceFrames> utterances,
                                      std::size_t epochs, DrawStrategy strategy,
                                      std::size_t length, std::uint64_t master_seed,
                                      std::uint32_t run_index);

/// Streaming form of BuildDrawPlan for plans too large to hold.
void ForEachDraw(std::span<const UtteranceFrames> utterances, std::size_t epochs,
                 DrawStrategy strategy, std::size_t length, std::uint64_t master_seed,
                 std::uint32_t run_index,
                 const std::function<void(const DrawRecord &)> &visit);

// CSV: run,epoch,utterance_id,strategy,window_start,permutation
// (permutation as dash-joined source frame indices).
void WriteDrawPlanCsv(std::ostream &out, std::span<const DrawRecord> plan);
std::string DrawRecordCsvLine(const DrawRecord &record);

/// 64-bit digest of the CSV rendering, usable to compare plans cheaply.
std::uint64_t DrawPlanDigest(std::span<const UtteranceFrames> utterances,
                             std::size_t epochs, DrawStrategy strategy,
                             std::size_t length, std::uint64_t master_seed,
                             std::uint32_t run_index);

}  // namespace sstbench

#endif  // SSTBENCH_SCRAMBLE_H_
