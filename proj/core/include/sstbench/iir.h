// include/sstbench/iir.h

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

#ifndef SSTBENCH_IIR_H_
#define SSTBENCH_IIR_H_

#include <span>
#include <vector>

namespace sstbench {

// y[n] = b0 x[n] + b1 x[n-1] + b2 x[n-2] - a1 y[n-1] - a2 y[n-2]
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

// Cascade of second-order sections, run with zero initial state.
class SosFilter {
 public:
  SosFilter() = default;
  explicit SosFilter(std::vector<Biquad> sections) : sections_(std::move(sections)) {}

  void Append(const SosFilter &other);

  void Apply(std::span<double> signal) const;
  /// Forward then time-reversed pass: zero phase, squared magnitude response.
  void ApplyZeroPhase(std::span<double> signal) const;

  /// True when every section's poles lie strictly inside the unit circle.
  bool Stable() const;

  const std::vector<Biquad> &sections() const { return sections_; }

 private:
  std::vector<Biquad> sections_;
};

/// Butterworth designs via the bilinear transform with frequency prewarping.
SosFilter ButterworthLowpass(int order, double cutoff_hz, double sample_rate);
SosFilter ButterworthHighpass(int order, double cutoff_hz, double sample_rate);
/// High-pass at `lo` cascaded with low-pass at `hi`. A band whose upper edge
/// is at Nyquist gets no low-pass stage.
SosFilter ButterworthBandpass(int order, double lo_hz, double hi_hz, double sample_rate);

}  // namespace sstbench

#endif  // SSTBENCH_IIR_H_
