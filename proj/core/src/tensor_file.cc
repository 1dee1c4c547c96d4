// src/tensor_file.cc

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

#include "sstbench/tensor_file.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "sstbench/error.h"

namespace sstbench {

static_assert(std::endian::native == std::endian::little,
              "Tensor File I/O assumes a little-endian host");

std::size_t Tensor::ElementCount() const {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

std::vector<std::uint8_t> EncodeTensor(const Tensor &t) {
  if (t.dims.size() > 255) Fail(ErrorKind::kProtocol, "tensor has more than 255 dims");
  if (t.ElementCount() != t.values.size())
    Fail(ErrorKind::kProtocol, "tensor dims do not match value count");
  std::vector<std::uint8_t> out;
  out.reserve(8 + 4 * t.dims.size() + 4 * t.values.size());
  out.insert(out.end(), {'S', 'S', 'T', 'F'});
  out.push_back(static_cast<std::uint8_t>(kTensorFileVersion & 0xff));
  out.push_back(static_cast<std::uint8_t>(kTensorFileVersion >> 8));
  out.push_back(0);
  out.push_back(static_cast<std::uint8_t>(t.dims.size()));
  for (std::uint32_t d : t.dims)
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(d >> (8 * i)));
  const auto *raw = reinterpret_cast<const std::uint8_t *>(t.values.data());
  out.insert(out.end(), raw, raw + 4 * t.values.size());
  return out;
}

Tensor DecodeTensor(std::span<const std::uint8_t> b) {
  if (b.size() < 8 || std::memcmp(b.data(), "SSTF", 4) != 0)
    Fail(ErrorKind::kProtocol, "not a Tensor File (bad magic)");
  const unsigned version = b[4] | (b[5] << 8);
  if (version != kTensorFileVersion)
    Fail(ErrorKind::kProtocol, "unsupported Tensor File version " + std::to_string(version));
  if (b[6] != 0) Fail(ErrorKind::kProtocol, "unsupported Tensor File dtype " + std::to_string(b[6]));
  const std::size_t ndim = b[7];
  if (b.size() < 8 + 4 * ndim) Fail(ErrorKind::kProtocol, "truncated Tensor File header");
  Tensor t;
  for (std::size_t i = 0; i < ndim; ++i) {
    std::uint32_t d = 0;
    for (int k = 0; k < 4; ++k) d |= static_cast<std::uint32_t>(b[8 + 4 * i + k]) << (8 * k);
    t.dims.push_back(d);
  }
  const std::size_t payload = b.size() - 8 - 4 * ndim;
  const std::size_t count = t.ElementCount();
  if (payload != 4 * count)
    Fail(ErrorKind::kProtocol, "Tensor File payload is " + std::to_string(payload) +
                                   " bytes, dims require " + std::to_string(4 * count));
  t.values.resize(count);
  if (count) std::memcpy(t.values.data(), b.data() + 8 + 4 * ndim, 4 * count);
  return t;
}

void WriteTensorFile(const std::filesystem::path &path, const Tensor &tensor) {
  auto bytes = EncodeTensor(tensor);
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorKind::kIo, "short write to " + path.string());
}

Tensor ReadTensorFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return DecodeTensor(bytes);
  } catch (const Error &e) {
    Fail(e.kind(), path.string() + ": " + e.message());
  }
}

void SaveSpectrogram(const std::filesystem::path &path, const Spectrogram &spec) {
  Tensor t;
  t.dims = {static_cast<std::uint32_t>(spec.n_frames()),
            static_cast<std::uint32_t>(spec.n_bins())};
  auto s = spec.data.storage();
  t.values.assign(s.begin(), s.end());
  WriteTensorFile(path, t);
}

Spectrogram LoadSpectrogram(const std::filesystem::path &path, std::string utterance_id,
                            double hop_length) {
  Tensor t = ReadTensorFile(path);
  if (t.dims.size() != 2)
    Fail(ErrorKind::kProtocol, path.string() + ": spectrogram cache must be 2-D");
  Spectrogram spec;
  spec.data = FeatureMatrix(t.dims[1], t.dims[0]);
  std::copy(t.values.begin(), t.values.end(), spec.data.storage().begin());
  spec.hop_length = hop_length;
  spec.utterance_id = std::move(utterance_id);
  return spec;
}

}  // namespace sstbench
