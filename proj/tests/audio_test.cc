// tests/audio_test.cc

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

#include <cstring>
#include <string>
#include <vector>

#include "sstbench/audio.h"
#include "test_util.h"

namespace sstbench {
namespace {

using testing::TempDir;

void Put16(std::vector<std::uint8_t> &b, std::uint16_t v) {
  b.push_back(v & 0xff);
  b.push_back(v >> 8);
}
void Put32(std::vector<std::uint8_t> &b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
}
void PutTag(std::vector<std::uint8_t> &b, const char *t) { b.insert(b.end(), t, t + 4); }

// Minimal reference RIFF writer, independent of EncodeWav.
std::vector<std::uint8_t> RefWav(const std::vector<std::int16_t> &pcm, int rate, int channels = 1,
                                 std::uint16_t format = 1) {
  std::vector<std::uint8_t> b;
  PutTag(b, "RIFF");
  Put32(b, static_cast<std::uint32_t>(36 + pcm.size() * 2));
  PutTag(b, "WAVE");
  PutTag(b, "fmt ");
  Put32(b, 16);
  Put16(b, format);
  Put16(b, static_cast<std::uint16_t>(channels));
  Put32(b, static_cast<std::uint32_t>(rate));
  Put32(b, static_cast<std::uint32_t>(rate * 2 * channels));
  Put16(b, static_cast<std::uint16_t>(2 * channels));
  Put16(b, 16);
  PutTag(b, "data");
  Put32(b, static_cast<std::uint32_t>(pcm.size() * 2));
  for (auto s : pcm) Put16(b, static_cast<std::uint16_t>(s));
  return b;
}

// Reference SPHERE writer: 1024-byte ASCII header padded with spaces.
std::vector<std::uint8_t> RefSphere(const std::vector<std::int16_t> &pcm, int rate,
                                    bool big_endian = false, long declared_count = -1) {
  std::string h = "NIST_1A\n   1024\n";
  h += "sample_rate -i " + std::to_string(rate) + "\n";
  h += "channel_count -i 1\nsample_n_bytes -i 2\n";
  h += std::string("sample_byte_format -s2 ") + (big_endian ? "10" : "01") + "\n";
  h += "sample_count -i " +
       std::to_string(declared_count < 0 ? static_cast<long>(pcm.size()) : declared_count) + "\n";
  h += "end_head\n";
  h.resize(1024, ' ');
  std::vector<std::uint8_t> b(h.begin(), h.end());
  for (auto s : pcm) {
    auto u = static_cast<std::uint16_t>(s);
    if (big_endian) {
      b.push_back(u >> 8);
      b.push_back(u & 0xff);
    } else {
      Put16(b, u);
    }
  }
  return b;
}

TEST(AudioTest, RiffOneSecondClip) {
  std::vector<std::int16_t> pcm(16000, 0);
  pcm[1] = 16384;
  pcm[2] = -32768;
  AudioClip c = DecodeAudio(RefWav(pcm, 16000));
  EXPECT_EQ(c.sample_rate, 16000);
  EXPECT_EQ(c.samples.size(), 16000u);
  EXPECT_DOUBLE_EQ(c.duration(), 1.0);
  EXPECT_FLOAT_EQ(c.samples[1], 0.5f);
  EXPECT_FLOAT_EQ(c.samples[2], -1.0f);
}

TEST(AudioTest, SphereHeaderSampleRate) {
  std::vector<std::int16_t> pcm{1, -2, 300, -32768, 32767};
  AudioClip c = DecodeAudio(RefSphere(pcm, 16000));
  EXPECT_EQ(c.sample_rate, 16000);
  ASSERT_EQ(c.samples.size(), pcm.size());
  for (std::size_t i = 0; i < pcm.size(); ++i)
    EXPECT_FLOAT_EQ(c.samples[i], static_cast<float>(pcm[i]) / 32768.0f);
}

TEST(AudioTest, SphereBigEndianMatchesLittleEndian) {
  std::vector<std::int16_t> pcm{1, -2, 300, -32768, 32767, 258};
  AudioClip le = DecodeAudio(RefSphere(pcm, 8000, false));
  AudioClip be = DecodeAudio(RefSphere(pcm, 8000, true));
  EXPECT_EQ(le.samples, be.samples);
  EXPECT_EQ(be.sample_rate, 8000);
}

TEST(AudioTest, SphereRoundTripThroughEncoder) {
  AudioClip c = testing::Sine(440, 0.05);
  AudioClip back = DecodeAudio(EncodeSphere(c));
  ASSERT_EQ(back.samples.size(), c.samples.size());
  for (std::size_t i = 0; i < c.samples.size(); ++i) EXPECT_NEAR(back.samples[i], c.samples[i], 1.0 / 32768);
}

TEST(AudioTest, WavRoundTripThroughEncoder) {
  AudioClip c = testing::Sine(300, 0.1, 22050);
  AudioClip back = DecodeAudio(EncodeWav(c));
  EXPECT_EQ(back.sample_rate, 22050);
  ASSERT_EQ(back.samples.size(), c.samples.size());
  for (std::size_t i = 0; i < c.samples.size(); ++i) EXPECT_NEAR(back.samples[i], c.samples[i], 1.0 / 32768);
}

TEST(AudioTest, JunkMagicIsUnsupported) {
  std::vector<std::uint8_t> junk{'J', 'U', 'N', 'K', 0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_SST_ERROR(DecodeAudio(junk), ErrorKind::kUnsupportedFormat);
}

TEST(AudioTest, TruncatedPayloadIsDecodeError) {
  auto wav = RefWav(std::vector<std::int16_t>(100, 7), 16000);
  wav.resize(wav.size() - 10);
  EXPECT_SST_ERROR(DecodeAudio(wav), ErrorKind::kDecode);
  auto sph = RefSphere(std::vector<std::int16_t>(100, 7), 16000, false, 200);
  EXPECT_SST_ERROR(DecodeAudio(sph), ErrorKind::kDecode);
}

TEST(AudioTest, StereoRejected) {
  auto wav = RefWav(std::vector<std::int16_t>(100, 0), 16000, 2);
  EXPECT_SST_ERROR(DecodeAudio(wav), ErrorKind::kUnsupportedFormat);
}

TEST(AudioTest, FloatWavRejected) {
  auto wav = RefWav(std::vector<std::int16_t>(10, 0), 16000, 1, 3);
  EXPECT_SST_ERROR(DecodeAudio(wav), ErrorKind::kUnsupportedFormat);
}

TEST(AudioTest, ReadAudioFromDiskAndMissingFile) {
  TempDir dir;
  testing::WriteBytes(dir / "a.wav", RefWav(std::vector<std::int16_t>(160, 100), 16000));
  EXPECT_EQ(ReadAudio(dir / "a.wav").samples.size(), 160u);
  EXPECT_SST_ERROR(ReadAudio(dir / "missing.wav"), ErrorKind::kIo);
}

TEST(AudioTest, DetectContainerByMagic) {
  const char riff[] = "RIFF....WAVE";
  const char nist[] = "NIST_1A\n";
  EXPECT_EQ(DetectContainer({reinterpret_cast<const std::uint8_t *>(riff), 12}),
            AudioContainer::kRiffWave);
  EXPECT_EQ(DetectContainer({reinterpret_cast<const std::uint8_t *>(nist), 8}),
            AudioContainer::kNistSphere);
  EXPECT_EQ(DetectContainer({reinterpret_cast<const std::uint8_t *>("JUNK"), 4}),
            AudioContainer::kUnknown);
}

TEST(AudioTest, ConformSampleRate) {
  AudioClip c = testing::Sine(200, 0.2, 32000);
  EXPECT_SST_ERROR(ConformSampleRate(c, 16000, false), ErrorKind::kConfig);
  AudioClip d = ConformSampleRate(c, 16000, true);
  EXPECT_EQ(d.sample_rate, 16000);
  EXPECT_EQ(d.samples.size(), c.samples.size() / 2);
  // A 200 Hz tone survives decimation with its amplitude intact.
  double peak = 0;
  for (std::size_t i = 200; i + 200 < d.samples.size(); ++i) peak = std::max(peak, std::abs(double(d.samples[i])));
  EXPECT_NEAR(peak, 0.5, 0.02);
  EXPECT_SST_ERROR(ConformSampleRate(c, 12000, true), ErrorKind::kConfig);
}

}  // namespace
}  // namespace sstbench
