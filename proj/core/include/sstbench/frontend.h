// include/sstbench/frontend.h

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

#ifndef SSTBENCH_FRONTEND_H_
#define SSTBENCH_FRONTEND_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sstbench/audio.h"
#include "sstbench/feature_matrix.h"

namespace sstbench {

enum class Normalization { kNone, kPerUtteranceMeanVar };
enum class FeatureSpace { kMel, kLinearStft };

Normalization ParseNormalization(std::string_view text);
std::string_view NormalizationName(Normalization n);
FeatureSpace ParseFeatureSpace(std::string_view text);
std::string_view FeatureSpaceName(FeatureSpace s);

struct FrontendConfig {
  int sample_rate = 16000;
  double win_length = 0.025;  // seconds
  double hop_length = 0.010;  // seconds
  int n_fft = 512;
  int n_mels = 40;
  double fmin = 0.0;
  double fmax = 8000.0;
  double log_floor = 1e-10;
  Normalization normalization = Normalization::kPerUtteranceMeanVar;
  double preemphasis = 0.0;
  // kLinearStft skips the filterbank and keeps all n_fft/2+1 bins.
  FeatureSpace feature_space = FeatureSpace::kMel;

  int WinSamples() const;
  int HopSamples() const;
  /// Throws a config error naming the first violated constraint.
  void Validate() const;
};

/// Frames of a non-centered analysis: floor((n - win) / hop) + 1, or 0 when
/// the signal is shorter than one window.
std::size_t FrameCount(std::size_t n_samples, std::size_t win, std::size_t hop);

double HzToMel(double hz);
double MelToHz(double mel);

// Triangular filters, row-major (n_mels x (n_fft/2 + 1)).
struct MelFilterbank {
  std::size_t n_mels = 0;
  std::size_t n_bins = 0;
  std::vector<double> weights;
  std::vector<double> center_hz;  // peak frequency of each filter

  double operator()(std::size_t mel, std::size_t bin) const {
    return weights[mel * n_bins + bin];
  }
};

/// Triangles with peaks at mel-equally-spaced centres between fmin and fmax,
/// each scaled so that its largest bin weight is exactly 1.
MelFilterbank BuildMelFilterbank(const FrontendConfig &config);

struct Spectrogram {
  FeatureMatrix data;  // n_bins x n_frames
  double hop_length = 0.0;
  std::string utterance_id;

  std::size_t n_bins() const noexcept { return data.rows(); }
  std::size_t n_frames() const noexcept { return data.cols(); }
};

/// Hann-windowed power spectra -> filterbank -> log(max(e, log_floor)), then
/// the configured normalization.
Spectrogram ComputeSpectrogram(const AudioClip &clip, const FrontendConfig &config,
                               std::string utterance_id = {});

/// In-place per-row mean/variance normalization; constant rows become zero.
void NormalizeMeanVar(FeatureMatrix &features);

}  // namespace sstbench

#endif  // SSTBENCH_FRONTEND_H_
