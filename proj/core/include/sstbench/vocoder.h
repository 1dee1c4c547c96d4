// include/sstbench/vocoder.h

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

#ifndef SSTBENCH_VOCODER_H_
#define SSTBENCH_VOCODER_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "sstbench/audio.h"

namespace sstbench {

// Noise vocoder: each band's fine structure is replaced by band-limited noise
// modulated with the input's band envelope. Temporal envelopes survive while
// within-band spectral detail is equalized across speakers.
struct VocoderConfig {
  int n_bands = 4;
  // Explicit ascending edges; when set they override n_bands/fmin/fmax.
  // Empty -> n_bands log-spaced bands from fmin to fmax.
  std::vector<double> band_edges;
  double fmin = 100.0;
  double fmax = 8000.0;
  double env_cutoff = 160.0;
  int filter_order = 4;  // per pass; zero-phase application doubles it
  std::uint64_t noise_seed = 0;

  /// Edges actually used at `sample_rate` (fmax is clipped to Nyquist).
  std::vector<double> ResolveEdges(int sample_rate) const;
  void Validate(int sample_rate) const;
};

/// n_bands + 1 log-spaced edges from fmin to fmax (first and last exact).
std::vector<double> DesignBands(int n_bands, double fmin, double fmax);

/// Band-pass (zero phase) -> half-wave rectify -> low-pass at env_cutoff
/// (zero phase) -> clamp at 0. One value per input sample.
std::vector<double> BandEnvelope(const AudioClip &clip, double lo_hz, double hi_hz,
                                 const VocoderConfig &config);

/// Sum over bands of unit-RMS band-passed white noise (seeded by
/// config.noise_seed) times the input band envelope, peak-normalized to the
/// input peak. Output length equals input length.
AudioClip NoiseVocode(const AudioClip &clip, const VocoderConfig &config);

/// Per-utterance carrier seed so that each file gets fresh noise.
std::uint64_t UtteranceNoiseSeed(std::uint64_t base_seed, std::string_view utterance_id);

}  // namespace sstbench

#endif  // SSTBENCH_VOCODER_H_
