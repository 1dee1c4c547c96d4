// include/sstbench/audio.h

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

#ifndef SSTBENCH_AUDIO_H_
#define SSTBENCH_AUDIO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace sstbench {

/// Mono PCM audio with samples scaled to [-1, 1].
struct AudioClip {
  std::vector<float> samples;
  int sample_rate = 0;

  double duration() const noexcept {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

enum class AudioContainer { kRiffWave, kNistSphere, kUnknown };

/// Looks only at the magic bytes ("RIFF" or "NIST_1A").
AudioContainer DetectContainer(std::span<const std::uint8_t> head);

/// Decodes a whole file image. Only 16-bit PCM mono is accepted; SPHERE data
/// may be little- or big-endian according to sample_byte_format.
AudioClip DecodeAudio(std::span<const std::uint8_t> bytes);

AudioClip ReadAudio(const std::filesystem::path &path);

/// Writes 16-bit PCM mono RIFF WAVE. Samples are clipped to [-1, 1).
void WriteWav(const std::filesystem::path &path, const AudioClip &clip);
std::vector<std::uint8_t> EncodeWav(const AudioClip &clip);

/// Writes a NIST SPHERE file (1024-byte header, little-endian PCM16).
std::vector<std::uint8_t> EncodeSphere(const AudioClip &clip);

/// Integer-factor decimation with a windowed-sinc anti-aliasing filter.
AudioClip Decimate(const AudioClip &clip, int factor);

/// Returns `clip` at `target_rate`, decimating when allowed and the ratio is
/// an integer; any other mismatch is a config error.
AudioClip ConformSampleRate(AudioClip clip, int target_rate,
                            bool allow_decimation);

}  // namespace sstbench

#endif  // SSTBENCH_AUDIO_H_
