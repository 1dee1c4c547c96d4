// src/frontend.cc

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

#include "sstbench/frontend.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sstbench/error.h"
#include "sstbench/fft.h"

namespace sstbench {

Normalization ParseNormalization(std::string_view s) {
  if (s == "none") return Normalization::kNone;
  if (s == "per-utterance-meanvar") return Normalization::kPerUtteranceMeanVar;
  Fail(ErrorKind::kConfig, "unknown normalization '" + std::string(s) + "'");
}

std::string_view NormalizationName(Normalization n) {
  return n == Normalization::kNone ? "none" : "per-utterance-meanvar";
}

FeatureSpace ParseFeatureSpace(std::string_view s) {
  if (s == "mel") return FeatureSpace::kMel;
  if (s == "linear-stft") return FeatureSpace::kLinearStft;
  Fail(ErrorKind::kConfig, "unknown feature space '" + std::string(s) + "'");
}

std::string_view FeatureSpaceName(FeatureSpace s) {
  return s == FeatureSpace::kMel ? "mel" : "linear-stft";
}

int FrontendConfig::WinSamples() const {
  return static_cast<int>(std::lround(win_length * sample_rate));
}

int FrontendConfig::HopSamples() const {
  return static_cast<int>(std::lround(hop_length * sample_rate));
}

void FrontendConfig::Validate() const {
  auto bad = [](const std::string &what) { Fail(ErrorKind::kConfig, "frontend: " + what); };
  if (sample_rate <= 0) bad("sample_rate must be positive");
  if (WinSamples() < 1) bad("win_length shorter than one sample");
  if (HopSamples() < 1) bad("hop_length shorter than one sample");
  if (n_fft < 2 || !IsPowerOfTwo(static_cast<std::size_t>(n_fft)))
    bad("n_fft must be a power of two");
  if (WinSamples() > n_fft) bad("win_length * sample_rate exceeds n_fft");
  if (!(fmin >= 0.0 && fmin < fmax && fmax <= sample_rate / 2.0))
    bad("need 0 <= fmin < fmax <= sample_rate/2");
  if (!(log_floor > 0.0)) bad("log_floor must be positive");
  if (n_mels < 1) bad("n_mels must be >= 1");
  if (!(preemphasis >= 0.0 && preemphasis < 1.0)) bad("preemphasis must be in [0, 1)");
}

std::size_t FrameCount(std::size_t n_samples, std::size_t win, std::size_t hop) {
  if (n_samples < win) return 0;
  return (n_samples - win) / hop + 1;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank BuildMelFilterbank(const FrontendConfig &config) {
  config.Validate();
  const auto n_mels = static_cast<std::size_t>(config.n_mels);
  const auto n_bins = static_cast<std::size_t>(config.n_fft / 2 + 1);
  const double bin_hz = static_cast<double>(config.sample_rate) / config.n_fft;

  const double mel_lo = HzToMel(config.fmin), mel_hi = HzToMel(config.fmax);
  std::vector<double> edges(n_mels + 2);
  for (std::size_t i = 0; i < edges.size(); ++i)
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / (n_mels + 1));
  edges.front() = config.fmin;
  edges.back() = config.fmax;

  MelFilterbank fb;
  fb.n_mels = n_mels;
  fb.n_bins = n_bins;
  fb.weights.assign(n_mels * n_bins, 0.0);
  fb.center_hz.assign(edges.begin() + 1, edges.end() - 1);

  for (std::size_t m = 0; m + 1 < n_mels; ++m) {
    if (std::lround(fb.center_hz[m] / bin_hz) == std::lround(fb.center_hz[m + 1] / bin_hz))
      Fail(ErrorKind::kConfig,
           "n_mels=" + std::to_string(n_mels) +
               " too large for FFT resolution: filter centres " + std::to_string(m) +
               " and " + std::to_string(m + 1) + " fall on the same bin");
  }

  for (std::size_t m = 0; m < n_mels; ++m) {
    const double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
    double peak = 0.0;
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double f = static_cast<double>(k) * bin_hz;
      double w = 0.0;
      if (f > lo && f < mid) w = (f - lo) / (mid - lo);
      else if (f == mid) w = 1.0;
      else if (f > mid && f < hi) w = (hi - f) / (hi - mid);
      fb.weights[m * n_bins + k] = w;
      peak = std::max(peak, w);
    }
    if (peak <= 0.0)
      Fail(ErrorKind::kConfig, "mel filter " + std::to_string(m) + " covers no FFT bin");
    for (std::size_t k = 0; k < n_bins; ++k) fb.weights[m * n_bins + k] /= peak;
  }
  return fb;
}

void NormalizeMeanVar(FeatureMatrix &x) {
  const std::size_t rows = x.rows(), cols = x.cols();
  if (cols == 0) return;
  for (std::size_t r = 0; r < rows; ++r) {
    double mean = 0.0;
    for (std::size_t c = 0; c < cols; ++c) mean += x(r, c);
    mean /= static_cast<double>(cols);
    double var = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      double d = x(r, c) - mean;
      var += d * d;
    }
    var /= static_cast<double>(cols);
    const double scale = var > 1e-12 ? 1.0 / std::sqrt(var) : 1.0;
    for (std::size_t c = 0; c < cols; ++c)
      x(r, c) = var > 1e-12 ? static_cast<float>((x(r, c) - mean) * scale) : 0.0f;
  }
}

Spectrogram ComputeSpectrogram(const AudioClip &clip, const FrontendConfig &config,
                               std::string utterance_id) {
  config.Validate();
  if (clip.sample_rate != config.sample_rate)
    Fail(ErrorKind::kConfig, "clip sample rate " + std::to_string(clip.sample_rate) +
                                 " Hz != frontend sample rate " +
                                 std::to_string(config.sample_rate) + " Hz");
  const auto win = static_cast<std::size_t>(config.WinSamples());
  const auto hop = static_cast<std::size_t>(config.HopSamples());
  const std::size_t n_frames = FrameCount(clip.samples.size(), win, hop);
  if (n_frames == 0)
    Fail(ErrorKind::kShortUtterance,
         "utterance '" + utterance_id + "' has " + std::to_string(clip.samples.size()) +
             " samples, shorter than one " + std::to_string(win) + "-sample window");

  const bool mel = config.feature_space == FeatureSpace::kMel;
  MelFilterbank fb;
  if (mel) fb = BuildMelFilterbank(config);
  const Fft fft(static_cast<std::size_t>(config.n_fft));
  const std::size_t n_bins = static_cast<std::size_t>(config.n_fft / 2 + 1);
  const std::size_t out_rows = mel ? fb.n_mels : n_bins;

  std::vector<double> window(win);
  for (std::size_t i = 0; i < win; ++i)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                     static_cast<double>(win - 1 > 0 ? win - 1 : 1));

  Spectrogram spec;
  spec.hop_length = config.hop_length;
  spec.utterance_id = std::move(utterance_id);
  spec.data = FeatureMatrix(out_rows, n_frames);

  std::vector<double> frame(win), power(n_bins);
  const double floor = config.log_floor;
  for (std::size_t t = 0; t < n_frames; ++t) {
    const float *src = clip.samples.data() + t * hop;
    for (std::size_t i = 0; i < win; ++i) frame[i] = src[i];
    if (config.preemphasis > 0.0) {
      for (std::size_t i = win - 1; i > 0; --i) frame[i] -= config.preemphasis * frame[i - 1];
      frame[0] -= config.preemphasis * frame[0];
    }
    for (std::size_t i = 0; i < win; ++i) frame[i] *= window[i];
    fft.PowerSpectrum(frame, power);
    auto column = spec.data.Column(t);
    if (mel) {
      for (std::size_t m = 0; m < fb.n_mels; ++m) {
        const double *w = fb.weights.data() + m * n_bins;
        double e = 0.0;
        for (std::size_t k = 0; k < n_bins; ++k) e += w[k] * power[k];
        column[m] = static_cast<float>(std::log(std::max(e, floor)));
      }
    } else {
      for (std::size_t k = 0; k < n_bins; ++k)
        column[k] = static_cast<float>(std::log(std::max(power[k], floor)));
    }
  }
  if (config.normalization == Normalization::kPerUtteranceMeanVar)
    NormalizeMeanVar(spec.data);
  return spec;
}

}  // namespace sstbench
