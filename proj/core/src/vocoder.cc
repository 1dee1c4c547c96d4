// src/vocoder.cc

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

#include "sstbench/vocoder.h"

#include <algorithm>
#include <cmath>

#include "sstbench/error.h"
#include "sstbench/iir.h"
#include "sstbench/rng.h"

namespace sstbench {

std::vector<double> DesignBands(int n_bands, double fmin, double fmax) {
  if (n_bands < 1) Fail(ErrorKind::kConfig, "n_bands must be >= 1");
  if (!(fmin > 0.0 && fmin < fmax)) Fail(ErrorKind::kConfig, "need 0 < fmin < fmax");
  std::vector<double> edges(static_cast<std::size_t>(n_bands) + 1);
  const double ratio = fmax / fmin;
  for (int i = 0; i <= n_bands; ++i)
    edges[static_cast<std::size_t>(i)] = fmin * std::pow(ratio, static_cast<double>(i) / n_bands);
  edges.front() = fmin;
  edges.back() = fmax;
  return edges;
}

std::vector<double> VocoderConfig::ResolveEdges(int sample_rate) const {
  if (!band_edges.empty()) return band_edges;
  return DesignBands(n_bands, fmin, std::min(fmax, sample_rate / 2.0));
}

void VocoderConfig::Validate(int sample_rate) const {
  auto bad = [](const std::string &what) { Fail(ErrorKind::kConfig, "vocoder: " + what); };
  if (sample_rate <= 0) bad("sample rate must be positive");
  const std::vector<double> edges = ResolveEdges(sample_rate);
  // Explicit edges define the bands themselves; n_bands only drives the
  // default log-spaced design.
  if (edges.size() < 2) bad("need at least two band edges");
  const double nyquist = sample_rate / 2.0;
  if (!(edges.front() > 0.0)) bad("lowest band edge must be above 0 Hz");
  if (edges.back() > nyquist) bad("highest band edge above Nyquist");
  double narrowest = edges[1] - edges[0];
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) bad("band edges must be strictly ascending");
    narrowest = std::min(narrowest, edges[i] - edges[i - 1]);
  }
  if (filter_order < 1 || filter_order > 16) bad("filter_order must be in 1..16");
  if (!(env_cutoff > 0.0 && env_cutoff < narrowest))
    bad("env_cutoff must be positive and below the narrowest band width");
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!ButterworthBandpass(filter_order, edges[i], edges[i + 1], sample_rate).Stable())
      bad("band " + std::to_string(i) + " too narrow for filter order");
  }
  if (!ButterworthLowpass(filter_order, env_cutoff, sample_rate).Stable())
    bad("envelope low-pass is unstable");
}

namespace {

std::vector<double> ToDouble(const AudioClip &clip) {
  return {clip.samples.begin(), clip.samples.end()};
}

std::vector<double> EnvelopeOf(std::vector<double> x, const SosFilter &band,
                               const SosFilter &smooth) {
  band.ApplyZeroPhase(x);
  for (double &v : x) v = std::max(v, 0.0);
  smooth.ApplyZeroPhase(x);
  for (double &v : x) v = std::max(v, 0.0);
  return x;
}

}  // namespace

std::vector<double> BandEnvelope(const AudioClip &clip, double lo_hz, double hi_hz,
                                 const VocoderConfig &config) {
  const double fs = clip.sample_rate;
  if (!(lo_hz > 0.0 && lo_hz < hi_hz && hi_hz <= fs / 2.0))
    Fail(ErrorKind::kConfig, "band must satisfy 0 < lo < hi <= Nyquist");
  const SosFilter band = ButterworthBandpass(config.filter_order, lo_hz, hi_hz, fs);
  const SosFilter smooth = ButterworthLowpass(config.filter_order, config.env_cutoff, fs);
  if (!band.Stable() || !smooth.Stable())
    Fail(ErrorKind::kConfig, "unstable envelope filter for band " + std::to_string(lo_hz) +
                                 "-" + std::to_string(hi_hz) + " Hz");
  return EnvelopeOf(ToDouble(clip), band, smooth);
}

AudioClip NoiseVocode(const AudioClip &clip, const VocoderConfig &config) {
  config.Validate(clip.sample_rate);
  const double fs = clip.sample_rate;
  const std::vector<double> edges = config.ResolveEdges(clip.sample_rate);
  const std::vector<double> input = ToDouble(clip);
  const std::size_t n = input.size();

  SplitMixStream rng(config.noise_seed);
  std::vector<double> noise(n);
  for (double &v : noise) v = rng.Gaussian();

  const SosFilter smooth = ButterworthLowpass(config.filter_order, config.env_cutoff, fs);
  std::vector<double> out(n, 0.0);
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    const SosFilter band = ButterworthBandpass(config.filter_order, edges[b], edges[b + 1], fs);
    const std::vector<double> env = EnvelopeOf(input, band, smooth);
    std::vector<double> carrier = noise;
    band.ApplyZeroPhase(carrier);
    double energy = 0.0;
    for (double v : carrier) energy += v * v;
    const double rms = n ? std::sqrt(energy / static_cast<double>(n)) : 0.0;
    if (rms <= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] += carrier[i] / rms * env[i];
  }

  double peak_in = 0.0, peak_out = 0.0;
  for (double v : input) peak_in = std::max(peak_in, std::abs(v));
  for (double v : out) peak_out = std::max(peak_out, std::abs(v));
  const double gain = peak_out > 0.0 ? peak_in / peak_out : 0.0;

  AudioClip result;
  result.sample_rate = clip.sample_rate;
  result.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.samples[i] = static_cast<float>(out[i] * gain);
  return result;
}

std::uint64_t UtteranceNoiseSeed(std::uint64_t base_seed, std::string_view utterance_id) {
  return DeriveSeed(base_seed, {Tag(StreamRole::kVocoderNoise), Fnv1a64(utterance_id)});
}

}  // namespace sstbench
