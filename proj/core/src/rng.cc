// src/rng.cc

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

#include "sstbench/rng.h"

#include <cmath>
#include <numbers>

namespace sstbench {

std::uint64_t DeriveSeed(std::uint64_t base,
                         std::span<const std::uint64_t> path) {
  std::uint64_t h = Mix64(base);
  for (std::uint64_t v : path) h = Mix64(h ^ Mix64(v + kGoldenGamma));
  return h;
}

std::uint64_t DeriveSeed(std::uint64_t base,
                         std::initializer_list<std::uint64_t> path) {
  return DeriveSeed(base, std::span<const std::uint64_t>(path.begin(), path.size()));
}

std::uint64_t SplitMixStream::UniformIndex(std::uint64_t n) noexcept {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t x = Next();
    if (x >= threshold) return x % n;
  }
}

double SplitMixStream::Gaussian() noexcept {
  // 1 - U keeps the log argument in (0, 1].
  double u1 = 1.0 - UniformDouble();
  double u2 = UniformDouble();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace sstbench
