// include/sstbench/feature_matrix.h

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

#ifndef SSTBENCH_FEATURE_MATRIX_H_
#define SSTBENCH_FEATURE_MATRIX_H_

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace sstbench {

// A (bins x frames) matrix of float features. Storage is column-major so that
// each frame (spectrogram column) is contiguous; scrambling moves whole
// columns and never touches individual values.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, float fill = 0.0f)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return cols_ == 0 || rows_ == 0; }

  float &operator()(std::size_t r, std::size_t c) noexcept {
    assert(r < rows_ && c < cols_);
    return data_[c * rows_ + r];
  }
  float operator()(std::size_t r, std::size_t c) const noexcept {
    assert(r < rows_ && c < cols_);
    return data_[c * rows_ + r];
  }

  std::span<float> Column(std::size_t c) noexcept {
    return {data_.data() + c * rows_, rows_};
  }
  std::span<const float> Column(std::size_t c) const noexcept {
    return {data_.data() + c * rows_, rows_};
  }

  /// Appends the columns of `other`; row counts must agree (or this is empty).
  void AppendColumns(const FeatureMatrix &other);

  /// Raw column-major storage.
  std::span<const float> storage() const noexcept { return data_; }
  std::span<float> storage() noexcept { return data_; }

  bool operator==(const FeatureMatrix &) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> data_;
};

inline void FeatureMatrix::AppendColumns(const FeatureMatrix &other) {
  if (cols_ == 0) rows_ = other.rows_;
  assert(rows_ == other.rows_);
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  cols_ += other.cols_;
}

}  // namespace sstbench

#endif  // SSTBENCH_FEATURE_MATRIX_H_
