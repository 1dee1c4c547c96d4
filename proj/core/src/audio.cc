// src/audio.cc

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

#include "sstbench/audio.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "sstbench/error.h"

namespace sstbench {
namespace {

constexpr std::size_t kSphereHeaderMin = 1024;

std::uint16_t ReadU16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t ReadU32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) |
         (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

void PutU16(std::vector<std::uint8_t> &out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutU32(std::vector<std::uint8_t> &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::int16_t ToPcm16(float x) {
  double s = std::clamp(static_cast<double>(x), -1.0, 32767.0 / 32768.0);
  return static_cast<std::int16_t>(std::lround(s * 32768.0));
}

std::vector<float> DecodePcm16(std::span<const std::uint8_t> payload,
                               bool big_endian) {
  std::vector<float> out(payload.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint8_t lo = payload[2 * i + (big_endian ? 1 : 0)];
    std::uint8_t hi = payload[2 * i + (big_endian ? 0 : 1)];
    auto v = static_cast<std::int16_t>(static_cast<std::uint16_t>(lo | (hi << 8)));
    out[i] = static_cast<float>(v / 32768.0);
  }
  return out;
}

AudioClip DecodeWave(std::span<const std::uint8_t> b) {
  if (b.size() < 12 || std::memcmp(b.data() + 8, "WAVE", 4) != 0)
    Fail(ErrorKind::kDecode, "RIFF file without WAVE form type");
  std::size_t pos = 12;
  bool have_fmt = false;
  int channels = 0, bits = 0, rate = 0;
  while (pos + 8 <= b.size()) {
    std::string id(reinterpret_cast<const char *>(b.data() + pos), 4);
    std::uint32_t size = ReadU32(b, pos + 4);
    std::size_t body = pos + 8;
    if (id == "fmt ") {
      if (size < 16 || body + size > b.size())
        Fail(ErrorKind::kDecode, "truncated fmt chunk");
      std::uint16_t tag = ReadU16(b, body);
      channels = ReadU16(b, body + 2);
      rate = static_cast<int>(ReadU32(b, body + 4));
      bits = ReadU16(b, body + 14);
      if (tag == 0xFFFE && size >= 40) tag = ReadU16(b, body + 24);
      if (tag != 1)
        Fail(ErrorKind::kUnsupportedFormat,
             "WAVE format tag " + std::to_string(tag) + " is not PCM");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) Fail(ErrorKind::kDecode, "data chunk before fmt chunk");
      if (bits != 16)
        Fail(ErrorKind::kUnsupportedFormat,
             "only 16-bit PCM is supported, got " + std::to_string(bits));
      if (channels != 1)
        Fail(ErrorKind::kUnsupportedFormat,
             "only mono audio is supported, got " + std::to_string(channels) +
                 " channels");
      if (rate <= 0) Fail(ErrorKind::kDecode, "invalid sample rate");
      if (body + size > b.size() || size % 2 != 0)
        Fail(ErrorKind::kDecode, "truncated data chunk");
      return AudioClip{DecodePcm16(b.subspan(body, size), false), rate};
    }
    pos = body + size + (size & 1u);
  }
  Fail(ErrorKind::kDecode, "no data chunk in WAVE file");
}

AudioClip DecodeSphere(std::span<const std::uint8_t> b) {
  // "NIST_1A\n" then the header size on its own line.
  std::size_t nl = 8;
  while (nl < b.size() && nl < 64 && b[nl] != '\n') ++nl;
  if (nl >= b.size()) Fail(ErrorKind::kDecode, "truncated SPHERE header");
  std::size_t header_size = 0;
  try {
    header_size = std::stoul(
        std::string(reinterpret_cast<const char *>(b.data() + 8), nl - 8));
  } catch (const std::exception &) {
    Fail(ErrorKind::kDecode, "bad SPHERE header size line");
  }
  if (header_size < kSphereHeaderMin || header_size > b.size())
    Fail(ErrorKind::kDecode, "truncated SPHERE header");

  std::map<std::string, std::string> fields;
  std::istringstream in(std::string(
      reinterpret_cast<const char *>(b.data() + nl + 1), header_size - nl - 1));
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("end_head", 0) == 0) break;
    std::istringstream ls(line);
    std::string name, type, value;
    if (!(ls >> name >> type)) continue;
    std::getline(ls >> std::ws, value);
    fields[name] = value;
  }
  auto get = [&](const std::string &key, const std::string &fallback) {
    auto it = fields.find(key);
    return it == fields.end() ? fallback : it->second;
  };
  if (!fields.count("sample_rate"))
    Fail(ErrorKind::kDecode, "SPHERE header lacks sample_rate");
  int rate = std::stoi(get("sample_rate", "0"));
  int channels = std::stoi(get("channel_count", "1"));
  int nbytes = std::stoi(get("sample_n_bytes", "2"));
  std::string coding = get("sample_coding", "pcm");
  std::string order = get("sample_byte_format", "01");
  if (coding != "pcm")
    Fail(ErrorKind::kUnsupportedFormat, "SPHERE sample_coding '" + coding + "'");
  if (nbytes != 2)
    Fail(ErrorKind::kUnsupportedFormat, "only 16-bit SPHERE samples supported");
  if (channels != 1)
    Fail(ErrorKind::kUnsupportedFormat, "only mono SPHERE files supported");
  if (rate <= 0) Fail(ErrorKind::kDecode, "invalid SPHERE sample_rate");

  auto payload = b.subspan(header_size);
  if (fields.count("sample_count")) {
    std::size_t count = std::stoull(fields["sample_count"]);
    if (payload.size() < count * 2)
      Fail(ErrorKind::kDecode, "SPHERE payload shorter than sample_count");
    payload = payload.first(count * 2);
  } else if (payload.size() % 2 != 0) {
    Fail(ErrorKind::kDecode, "SPHERE payload has odd byte count");
  }
  return AudioClip{DecodePcm16(payload, order == "10"), rate};
}

}  // namespace

AudioContainer DetectContainer(std::span<const std::uint8_t> head) {
  if (head.size() >= 4 && std::memcmp(head.data(), "RIFF", 4) == 0)
    return AudioContainer::kRiffWave;
  if (head.size() >= 7 && std::memcmp(head.data(), "NIST_1A", 7) == 0)
    return AudioContainer::kNistSphere;
  return AudioContainer::kUnknown;
}

AudioClip DecodeAudio(std::span<const std::uint8_t> bytes) {
  switch (DetectContainer(bytes)) {
    case AudioContainer::kRiffWave: return DecodeWave(bytes);
    case AudioContainer::kNistSphere: return DecodeSphere(bytes);
    case AudioContainer::kUnknown: break;
  }
  Fail(ErrorKind::kUnsupportedFormat, "unrecognized audio magic bytes");
}

AudioClip ReadAudio(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return DecodeAudio(bytes);
  } catch (const Error &e) {
    Fail(e.kind(), path.string() + ": " + e.message());
  }
}

std::vector<std::uint8_t> EncodeWav(const AudioClip &clip) {
  const auto data_bytes = static_cast<std::uint32_t>(clip.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  auto tag = [&](const char *t) { out.insert(out.end(), t, t + 4); };
  tag("RIFF");
  PutU32(out, 36 + data_bytes);
  tag("WAVE");
  tag("fmt ");
  PutU32(out, 16);
  PutU16(out, 1);
  PutU16(out, 1);
  PutU32(out, static_cast<std::uint32_t>(clip.sample_rate));
  PutU32(out, static_cast<std::uint32_t>(clip.sample_rate) * 2);
  PutU16(out, 2);
  PutU16(out, 16);
  tag("data");
  PutU32(out, data_bytes);
  for (float s : clip.samples) PutU16(out, static_cast<std::uint16_t>(ToPcm16(s)));
  return out;
}

void WriteWav(const std::filesystem::path &path, const AudioClip &clip) {
  auto bytes = EncodeWav(clip);
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorKind::kIo, "short write to " + path.string());
}

std::vector<std::uint8_t> EncodeSphere(const AudioClip &clip) {
  std::ostringstream h;
  h << "NIST_1A\n   1024\n"
    << "sample_count -i " << clip.samples.size() << "\n"
    << "sample_rate -i " << clip.sample_rate << "\n"
    << "channel_count -i 1\n"
    << "sample_byte_format -s2 01\n"
    << "sample_n_bytes -i 2\n"
    << "sample_sig_bits -i 16\n"
    << "sample_coding -s3 pcm\n"
    << "end_head\n";
  std::string header = h.str();
  header.resize(kSphereHeaderMin, ' ');
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (float s : clip.samples) PutU16(out, static_cast<std::uint16_t>(ToPcm16(s)));
  return out;
}

AudioClip Decimate(const AudioClip &clip, int factor) {
  if (factor < 1) Fail(ErrorKind::kConfig, "decimation factor must be >= 1");
  if (factor == 1) return clip;
  // Hamming-windowed sinc low-pass at 0.9 of the new Nyquist.
  const int half = 16 * factor;
  const double cutoff = 0.9 / (2.0 * factor);
  std::vector<double> taps(2 * half + 1);
  double sum = 0.0;
  for (int k = -half; k <= half; ++k) {
    double x = 2.0 * cutoff * k;
    double sinc = k == 0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
    double w = 0.54 + 0.46 * std::cos(std::numbers::pi * k / half);
    taps[k + half] = 2.0 * cutoff * sinc * w;
    sum += taps[k + half];
  }
  for (double &t : taps) t /= sum;

  const auto n = static_cast<long>(clip.samples.size());
  AudioClip out;
  out.sample_rate = clip.sample_rate / factor;
  out.samples.reserve(static_cast<std::size_t>(n / factor + 1));
  for (long c = 0; c < n; c += factor) {
    double acc = 0.0;
    for (int k = -half; k <= half; ++k) {
      long i = c - k;
      if (i >= 0 && i < n) acc += taps[k + half] * clip.samples[static_cast<std::size_t>(i)];
    }
    out.samples.push_back(static_cast<float>(acc));
  }
  return out;
}

AudioClip ConformSampleRate(AudioClip clip, int target_rate,
                            bool allow_decimation) {
  if (clip.sample_rate == target_rate) return clip;
  if (allow_decimation && clip.sample_rate > target_rate &&
      clip.sample_rate % target_rate == 0)
    return Decimate(clip, clip.sample_rate / target_rate);
  Fail(ErrorKind::kConfig, "sample rate " + std::to_string(clip.sample_rate) +
                               " Hz does not match configured " +
                               std::to_string(target_rate) + " Hz");
}

}  // namespace sstbench
