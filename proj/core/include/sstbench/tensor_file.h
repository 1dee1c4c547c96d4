// include/sstbench/tensor_file.h

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

#ifndef SSTBENCH_TENSOR_FILE_H_
#define SSTBENCH_TENSOR_FILE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sstbench/frontend.h"

namespace sstbench {

// Tensor File layout (little-endian throughout):
//   bytes 0-3   magic "SSTF"
//   bytes 4-5   version, u16 = 1
//   byte  6     dtype, u8 (0 = float32)
//   byte  7     ndim, u8
//   ndim x u32  dimensions
//   payload     row-major float32 values
struct Tensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> values;

  std::size_t ElementCount() const;
  bool operator==(const Tensor &) const = default;
};

inline constexpr std::uint16_t kTensorFileVersion = 1;

std::vector<std::uint8_t> EncodeTensor(const Tensor &tensor);
/// Throws kProtocol on any header or size inconsistency.
Tensor DecodeTensor(std::span<const std::uint8_t> bytes);

void WriteTensorFile(const std::filesystem::path &path, const Tensor &tensor);
Tensor ReadTensorFile(const std::filesystem::path &path);

/// Spectrogram cache entries are stored as (n_frames, n_bins).
void SaveSpectrogram(const std::filesystem::path &path, const Spectrogram &spec);
Spectrogram LoadSpectrogram(const std::filesystem::path &path, std::string utterance_id,
                            double hop_length);

}  // namespace sstbench

#endif  // SSTBENCH_TENSOR_FILE_H_
