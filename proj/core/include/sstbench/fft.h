// include/sstbench/fft.h

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

#ifndef SSTBENCH_FFT_H_
#define SSTBENCH_FFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sstbench {

// Iterative radix-2 FFT with precomputed twiddles. One instance may be shared
// across threads; Transform() keeps no mutable state.
class Fft {
 public:
  /// n must be a power of two >= 2.
  explicit Fft(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// In-place forward transform (negative exponent, no scaling).
  void Transform(std::span<std::complex<double>> data) const;

  /// |X[k]|^2 for k = 0..n/2 of a real input of length <= n (zero-padded).
  void PowerSpectrum(std::span<const double> input, std::span<double> power) const;

 private:
  std::size_t n_;
  std::vector<std::complex<double>> twiddles_;
  std::vector<std::size_t> bitrev_;
};

bool IsPowerOfTwo(std::size_t n) noexcept;

}  // namespace sstbench

#endif  // SSTBENCH_FFT_H_
