// include/sstbench/rng.h

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

#ifndef SSTBENCH_RNG_H_
#define SSTBENCH_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>

namespace sstbench {

// Seed derivation and the random stream used by every stochastic step.
// Both are part of the external interface: plans written by one build must be
// reproducible by an independent implementation, so the constants below must
// never change.
//
//   Mix64(z):   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//               z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//               return z ^ (z >> 31)
//   DeriveSeed(base, v1..vn):
//               h = Mix64(base)
//               for each v: h = Mix64(h ^ Mix64(v + 0x9e3779b97f4a7c15))
//   Stream:     state = seed; next() { state += 0x9e3779b97f4a7c15;
//                                      return Mix64(state); }
//   UniformIndex(n): reject x < (2^64 - n) mod n, return x mod n.

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t Mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// 64-bit FNV-1a; used to key streams off utterance ids.
constexpr std::uint64_t Fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t DeriveSeed(std::uint64_t base, std::span<const std::uint64_t> path);
std::uint64_t DeriveSeed(std::uint64_t base,
                         std::initializer_list<std::uint64_t> path);

/// Role tags separating the randomness of independent pipeline stages.
enum class StreamRole : std::uint64_t {
  kTrainDraw = 1,
  kEvalDraw = 2,
  kClusterSample = 3,
  kVocoderNoise = 4,
};

constexpr std::uint64_t Tag(StreamRole role) noexcept {
  return static_cast<std::uint64_t>(role);
}

class SplitMixStream {
 public:
  using result_type = std::uint64_t;

  explicit SplitMixStream(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t Next() noexcept {
    state_ += kGoldenGamma;
    return Mix64(state_);
  }
  std::uint64_t operator()() noexcept { return Next(); }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~0ULL; }

  /// Unbiased integer in [0, n). n must be positive.
  std::uint64_t UniformIndex(std::uint64_t n) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double UniformDouble() noexcept {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  /// Standard normal deviate (Box-Muller, one value per two draws).
  double Gaussian() noexcept;

  /// In-place Fisher-Yates shuffle: for i = n-1 .. 1, swap(a[i], a[U(i+1)]).
  template <typename T>
  void Shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(UniformIndex(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace sstbench

#endif  // SSTBENCH_RNG_H_
