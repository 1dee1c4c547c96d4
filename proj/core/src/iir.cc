// src/iir.cc

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

#include "sstbench/iir.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sstbench/error.h"

namespace sstbench {
namespace {

enum class Pass { kLow, kHigh };

SosFilter Butterworth(Pass pass, int order, double cutoff_hz, double fs) {
  if (order < 1 || order > 16)
    Fail(ErrorKind::kConfig, "filter order must be in 1..16");
  if (!(cutoff_hz > 0.0 && cutoff_hz < fs / 2.0))
    Fail(ErrorKind::kConfig, "cutoff " + std::to_string(cutoff_hz) +
                                 " Hz outside (0, Nyquist)");
  const double w0 = 2.0 * std::numbers::pi * cutoff_hz / fs;
  const double cw = std::cos(w0), sw = std::sin(w0);
  std::vector<Biquad> sections;
  for (int k = 0; k < order / 2; ++k) {
    const double q = 1.0 / (2.0 * std::sin((2 * k + 1) * std::numbers::pi / (2.0 * order)));
    const double alpha = sw / (2.0 * q);
    const double a0 = 1.0 + alpha;
    Biquad s;
    if (pass == Pass::kLow) {
      s.b0 = (1.0 - cw) / 2.0 / a0;
      s.b1 = (1.0 - cw) / a0;
      s.b2 = s.b0;
    } else {
      s.b0 = (1.0 + cw) / 2.0 / a0;
      s.b1 = -(1.0 + cw) / a0;
      s.b2 = s.b0;
    }
    s.a1 = -2.0 * cw / a0;
    s.a2 = (1.0 - alpha) / a0;
    sections.push_back(s);
  }
  if (order % 2 == 1) {
    const double k = std::tan(w0 / 2.0);
    Biquad s;
    if (pass == Pass::kLow) {
      s.b0 = k / (1.0 + k);
      s.b1 = s.b0;
    } else {
      s.b0 = 1.0 / (1.0 + k);
      s.b1 = -s.b0;
    }
    s.a1 = (k - 1.0) / (k + 1.0);
    sections.push_back(s);
  }
  return SosFilter(std::move(sections));
}

}  // namespace

void SosFilter::Append(const SosFilter &other) {
  sections_.insert(sections_.end(), other.sections_.begin(), other.sections_.end());
}

void SosFilter::Apply(std::span<double> x) const {
  for (const Biquad &s : sections_) {
    double z1 = 0.0, z2 = 0.0;  // transposed direct form II
    for (double &v : x) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
}

void SosFilter::ApplyZeroPhase(std::span<double> x) const {
  Apply(x);
  std::reverse(x.begin(), x.end());
  Apply(x);
  std::reverse(x.begin(), x.end());
}

bool SosFilter::Stable() const {
  // Jury conditions for z^2 + a1 z + a2.
  return std::all_of(sections_.begin(), sections_.end(), [](const Biquad &s) {
    return std::isfinite(s.a1) && std::isfinite(s.a2) && std::abs(s.a2) < 1.0 &&
           std::abs(s.a1) < 1.0 + s.a2;
  });
}

SosFilter ButterworthLowpass(int order, double cutoff_hz, double fs) {
  return Butterworth(Pass::kLow, order, cutoff_hz, fs);
}

SosFilter ButterworthHighpass(int order, double cutoff_hz, double fs) {
  return Butterworth(Pass::kHigh, order, cutoff_hz, fs);
}

SosFilter ButterworthBandpass(int order, double lo_hz, double hi_hz, double fs) {
  if (!(lo_hz < hi_hz))
    Fail(ErrorKind::kConfig, "band-pass needs lo < hi");
  SosFilter f = ButterworthHighpass(order, lo_hz, fs);
  if (hi_hz < fs / 2.0) f.Append(ButterworthLowpass(order, hi_hz, fs));
  else if (hi_hz > fs / 2.0)
    Fail(ErrorKind::kConfig, "band edge " + std::to_string(hi_hz) + " Hz above Nyquist");
  return f;
}

}  // namespace sstbench
