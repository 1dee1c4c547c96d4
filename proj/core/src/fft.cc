// src/fft.cc

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

#include "sstbench/fft.h"

#include <cassert>
#include <cmath>
#include <numbers>

#include "sstbench/error.h"

namespace sstbench {

bool IsPowerOfTwo(std::size_t n) noexcept { return n >= 1 && (n & (n - 1)) == 0; }

Fft::Fft(std::size_t n) : n_(n), twiddles_(n / 2), bitrev_(n) {
  if (n < 2 || !IsPowerOfTwo(n))
    Fail(ErrorKind::kConfig, "FFT size must be a power of two >= 2, got " + std::to_string(n));
  for (std::size_t k = 0; k < n / 2; ++k) {
    double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    twiddles_[k] = {std::cos(angle), std::sin(angle)};
  }
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    bitrev_[i] = r;
  }
}

void Fft::Transform(std::span<std::complex<double>> data) const {
  assert(data.size() == n_);
  for (std::size_t i = 0; i < n_; ++i)
    if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2, stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> t = twiddles_[k * stride] * data[start + k + half];
        data[start + k + half] = data[start + k] - t;
        data[start + k] += t;
      }
    }
  }
}

void Fft::PowerSpectrum(std::span<const double> input, std::span<double> power) const {
  assert(input.size() <= n_ && power.size() == n_ / 2 + 1);
  std::vector<std::complex<double>> buf(n_);
  for (std::size_t i = 0; i < input.size(); ++i) buf[i] = input[i];
  Transform(buf);
  for (std::size_t k = 0; k <= n_ / 2; ++k) power[k] = std::norm(buf[k]);
}

}  // namespace sstbench
