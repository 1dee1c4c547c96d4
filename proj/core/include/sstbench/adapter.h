// include/sstbench/adapter.h

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

#ifndef SSTBENCH_ADAPTER_H_
#define SSTBENCH_ADAPTER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sstbench/models.h"
#include "sstbench/tensor_file.h"

namespace sstbench {

// External embedders run as subprocesses exchanging files in a work
// directory. For every call the harness writes <workdir>/job.json and runs
//
//   <adapter_command> --job <workdir>
//
// fit job:   {"command":"fit","features_path":...,"labels_path":...,
//             "seed":N,"params":{...},"timeout_s":T}
//            features: (n_segments, n_bins, L) Tensor File
//            labels.csv: segment_index,utterance_id,speaker_id
//            the adapter must write result.json {"status":"ok","model_path":...}
// embed job: {"command":"embed","model_path":...,"features_path":...,
//             "output_path":...,"segments_path":...}
//            segments.csv: segment_index,utterance_id
//            the adapter must write an (n_segments, d) Tensor File at
//            output_path (<workdir>/embeddings.bin)
//
// All paths in job.json are absolute.

struct AdapterOptions {
  double timeout_s = 3600.0;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> params;  // passed through verbatim
};

struct ModelState {
  std::string model_path;
};

struct SegmentLabel {
  std::string utterance_id;
  std::string speaker_id;
};

/// Stacks equally-shaped segments into an (n, bins, L) tensor. With no
/// segments the result is (0, bins, L) using the given fallback shape.
Tensor StackSegments(std::span<const FeatureMatrix> segments, std::uint32_t bins = 0,
                     std::uint32_t length = 0);

/// Runs `command --job workdir`, capturing stderr into workdir/adapter.stderr.
/// Returns the exit status; throws kAdapterTimeout after timeout_s.
int RunAdapterProcess(const std::string &command, const std::filesystem::path &workdir,
                      double timeout_s, std::string *stderr_text = nullptr);

ModelState AdapterFit(const EmbeddingModelRef &model, const Tensor &train_features,
                      std::span<const SegmentLabel> labels,
                      const std::filesystem::path &workdir, const AdapterOptions &options);

/// Returns one embedding per input segment, in input order.
std::vector<Embedding> AdapterEmbedSegments(const EmbeddingModelRef &model,
                                            const ModelState &state, const Tensor &segments,
                                            std::span<const std::string> segment_utterances,
                                            const std::filesystem::path &workdir,
                                            const AdapterOptions &options);

/// As above, averaging the embeddings of segments that share an utterance.
EmbeddingMap AdapterEmbed(const EmbeddingModelRef &model, const ModelState &state,
                          const Tensor &segments,
                          std::span<const std::string> segment_utterances,
                          const std::filesystem::path &workdir,
                          const AdapterOptions &options);

}  // namespace sstbench

#endif  // SSTBENCH_ADAPTER_H_
