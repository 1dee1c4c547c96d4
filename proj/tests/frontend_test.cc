// tests/frontend_test.cc

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

#include <cmath>
#include <random>

#include "sstbench/frontend.h"
#include "test_util.h"

namespace sstbench {
namespace {

FrontendConfig Raw() {
  FrontendConfig c;
  c.normalization = Normalization::kNone;
  return c;
}

AudioClip Noise(double seconds, double amp, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g(0.0, amp);
  AudioClip c;
  c.sample_rate = 16000;
  c.samples.resize(static_cast<std::size_t>(seconds * 16000));
  for (auto &s : c.samples) s = static_cast<float>(g(gen));
  return c;
}

TEST(FrontendTest, FrameCountOneSecond) {
  EXPECT_EQ(FrameCount(16000, 400, 160), 98u);
  EXPECT_EQ((16000 - 400) / 160 + 1, 98);
  EXPECT_EQ(FrameCount(399, 400, 160), 0u);
  EXPECT_EQ(FrameCount(400, 400, 160), 1u);
  Spectrogram s = ComputeSpectrogram(testing::Sine(1000, 1.0), FrontendConfig{});
  EXPECT_EQ(s.n_frames(), 98u);
  EXPECT_EQ(s.n_bins(), 40u);
}

TEST(FrontendTest, MelFormula) {
  // Independent: 2595 log10(1 + f/700).
  for (double f : {0.0, 100.0, 700.0, 1000.0, 4000.0, 8000.0}) {
    EXPECT_NEAR(HzToMel(f), 2595.0 * std::log10(1.0 + f / 700.0), 1e-9);
    EXPECT_NEAR(MelToHz(HzToMel(f)), f, 1e-9);
  }
}

TEST(FrontendTest, FilterbankCentersMelSpaced) {
  FrontendConfig c;
  MelFilterbank fb = BuildMelFilterbank(c);
  ASSERT_EQ(fb.center_hz.size(), 40u);
  ASSERT_EQ(fb.n_bins, 257u);
  const double step = 2595.0 * std::log10(1.0 + 8000.0 / 700.0) / 41.0;
  for (std::size_t m = 0; m < 40; ++m) {
    const double expect = 700.0 * (std::pow(10.0, step * (m + 1) / 2595.0) - 1.0);
    EXPECT_NEAR(fb.center_hz[m], expect, 1e-6);
    if (m) {
      EXPECT_GT(fb.center_hz[m], fb.center_hz[m - 1]);
    }
  }
}

TEST(FrontendTest, FilterbankPeaksAndCoverage) {
  for (int n_mels : {1, 10, 40, 64}) {
    FrontendConfig c;
    c.n_mels = n_mels;
    MelFilterbank fb = BuildMelFilterbank(c);
    for (std::size_t m = 0; m < fb.n_mels; ++m) {
      double peak = 0;
      for (std::size_t k = 0; k < fb.n_bins; ++k) peak = std::max(peak, fb(m, k));
      EXPECT_DOUBLE_EQ(peak, 1.0);
    }
    const double bin_hz = 16000.0 / 512;
    for (std::size_t k = 0; k < fb.n_bins; ++k) {
      const double f = k * bin_hz;
      if (!(f > c.fmin && f < c.fmax)) continue;
      double sum = 0;
      for (std::size_t m = 0; m < fb.n_mels; ++m) sum += fb(m, k);
      EXPECT_GT(sum, 0.0) << "bin " << k << " n_mels " << n_mels;
    }
  }
}

TEST(FrontendTest, SingleFilterSpansFullBand) {
  FrontendConfig c;
  c.n_mels = 1;
  MelFilterbank fb = BuildMelFilterbank(c);
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < fb.n_bins; ++k) nonzero += fb(0, k) > 0;
  EXPECT_EQ(nonzero, fb.n_bins - 2);  // every bin except 0 Hz and Nyquist
}

TEST(FrontendTest, TooManyMelsIsConfigError) {
  FrontendConfig c;
  c.n_mels = 200;
  EXPECT_SST_ERROR(BuildMelFilterbank(c), ErrorKind::kConfig);
}

TEST(FrontendTest, ConfigValidation) {
  FrontendConfig c;
  c.n_fft = 256;  // 400-sample window does not fit
  EXPECT_SST_ERROR(c.Validate(), ErrorKind::kConfig);
  c = FrontendConfig{};
  c.fmax = 9000;
  EXPECT_SST_ERROR(c.Validate(), ErrorKind::kConfig);
  c = FrontendConfig{};
  c.log_floor = 0;
  EXPECT_SST_ERROR(c.Validate(), ErrorKind::kConfig);
}

TEST(FrontendTest, SilenceIsLogFloorThenZeros) {
  AudioClip silence;
  silence.sample_rate = 16000;
  silence.samples.assign(8000, 0.0f);
  Spectrogram raw = ComputeSpectrogram(silence, Raw());
  for (float v : raw.data.storage()) EXPECT_FLOAT_EQ(v, static_cast<float>(std::log(1e-10)));
  Spectrogram norm = ComputeSpectrogram(silence, FrontendConfig{});
  for (float v : norm.data.storage()) EXPECT_EQ(v, 0.0f);
}

TEST(FrontendTest, SineAtFilterCenterPeaksThere) {
  FrontendConfig c = Raw();
  MelFilterbank fb = BuildMelFilterbank(c);
  for (std::size_t target : {5u, 17u, 30u}) {
    // Place the tone exactly on the FFT bin nearest the filter centre.
    const double bin_hz = 16000.0 / 512;
    const double hz = std::round(fb.center_hz[target] / bin_hz) * bin_hz;
    std::size_t best_filter = 0;
    for (std::size_t m = 1; m < fb.n_mels; ++m)
      if (fb(m, std::lround(hz / bin_hz)) > fb(best_filter, std::lround(hz / bin_hz))) best_filter = m;
    Spectrogram s = ComputeSpectrogram(testing::Sine(hz, 0.5), c);
    for (std::size_t t = 0; t < s.n_frames(); ++t) {
      std::size_t arg = 0;
      for (std::size_t m = 1; m < s.n_bins(); ++m)
        if (s.data(m, t) > s.data(arg, t)) arg = m;
      EXPECT_EQ(arg, best_filter) << "frame " << t;
    }
  }
}

TEST(FrontendTest, ShiftByOneHop) {
  AudioClip a = Noise(0.5, 0.1, 3);
  AudioClip b = a;
  b.samples.insert(b.samples.begin(), 160, 0.0f);
  // Delaying by one hop prepends exactly one frame.
  Spectrogram sa = ComputeSpectrogram(a, Raw()), sb = ComputeSpectrogram(b, Raw());
  ASSERT_EQ(sb.n_frames(), sa.n_frames() + 1);
  for (std::size_t t = 0; t < sa.n_frames(); ++t)
    for (std::size_t m = 0; m < sa.n_bins(); ++m) EXPECT_NEAR(sb.data(m, t + 1), sa.data(m, t), 1e-5);
}

TEST(FrontendTest, EnergyMonotonicity) {
  AudioClip a = Noise(0.3, 0.05, 4);
  AudioClip b = a;
  for (auto &s : b.samples) s *= 2.0f;
  Spectrogram sa = ComputeSpectrogram(a, Raw()), sb = ComputeSpectrogram(b, Raw());
  const double shift = std::log(4.0);
  for (std::size_t i = 0; i < sa.data.storage().size(); ++i) {
    ASSERT_GT(sa.data.storage()[i], std::log(1e-10) + 1.0);
    EXPECT_NEAR(sb.data.storage()[i] - sa.data.storage()[i], shift, 1e-6);
  }
}

TEST(FrontendTest, MeanVarNormalizationStats) {
  Spectrogram s = ComputeSpectrogram(Noise(1.0, 0.2, 5), FrontendConfig{});
  for (std::size_t m = 0; m < s.n_bins(); ++m) {
    double sum = 0, sq = 0;
    for (std::size_t t = 0; t < s.n_frames(); ++t) sum += s.data(m, t);
    const double mean = sum / s.n_frames();
    for (std::size_t t = 0; t < s.n_frames(); ++t) sq += (s.data(m, t) - mean) * (s.data(m, t) - mean);
    EXPECT_LT(std::abs(mean), 1e-6);
    EXPECT_NEAR(sq / s.n_frames(), 1.0, 1e-4);
  }
}

TEST(FrontendTest, ConstantRowNormalizesToZero) {
  FeatureMatrix x(2, 4);
  for (std::size_t t = 0; t < 4; ++t) {
    x(0, t) = 3.0f;
    x(1, t) = static_cast<float>(t);
  }
  NormalizeMeanVar(x);
  for (std::size_t t = 0; t < 4; ++t) EXPECT_EQ(x(0, t), 0.0f);
  EXPECT_NEAR(x(1, 0), -1.5 / std::sqrt(1.25), 1e-6);
}

TEST(FrontendTest, ShortClipAndRateMismatch) {
  AudioClip tiny = testing::Sine(100, 0.01);
  EXPECT_SST_ERROR(ComputeSpectrogram(tiny, FrontendConfig{}), ErrorKind::kShortUtterance);
  EXPECT_SST_ERROR(ComputeSpectrogram(testing::Sine(100, 0.5, 8000), FrontendConfig{}),
                   ErrorKind::kConfig);
}

TEST(FrontendTest, LinearStftSpace) {
  FrontendConfig c = Raw();
  c.feature_space = FeatureSpace::kLinearStft;
  Spectrogram s = ComputeSpectrogram(testing::Sine(1000, 0.2), c);
  EXPECT_EQ(s.n_bins(), 257u);
  std::size_t arg = 0;
  for (std::size_t k = 1; k < 257; ++k)
    if (s.data(k, 3) > s.data(arg, 3)) arg = k;
  EXPECT_EQ(arg, 32u);  // 1000 Hz / 31.25 Hz per bin
}

TEST(FrontendTest, PreemphasisAttenuatesLowFrequencies) {
  FrontendConfig c = Raw();
  Spectrogram plain = ComputeSpectrogram(testing::Sine(100, 0.2), c);
  c.preemphasis = 0.97;
  Spectrogram pre = ComputeSpectrogram(testing::Sine(100, 0.2), c);
  EXPECT_LT(pre.data(1, 5), plain.data(1, 5) - 2.0);
}

TEST(FrontendTest, ParseNames) {
  EXPECT_EQ(ParseNormalization("none"), Normalization::kNone);
  EXPECT_EQ(ParseNormalization(NormalizationName(Normalization::kPerUtteranceMeanVar)),
            Normalization::kPerUtteranceMeanVar);
  EXPECT_EQ(ParseFeatureSpace("linear-stft"), FeatureSpace::kLinearStft);
  EXPECT_SST_ERROR(ParseFeatureSpace("mfcc"), ErrorKind::kConfig);
}

}  // namespace
}  // namespace sstbench
