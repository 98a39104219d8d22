// Copyright 2026 The sppkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "sppkit/errors.hpp"

namespace sppkit {

/// Dense bins x frames matrix stored row-major (one row per frequency bin).
/// Row-major K x L is also the on-disk layout of every dump format.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t bins, std::size_t frames, T fill = T{})
      : bins_(bins), frames_(frames), data_(bins * frames, fill) {}

  std::size_t bins() const { return bins_; }
  std::size_t frames() const { return frames_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t k, std::size_t l) { return data_[k * frames_ + l]; }
  const T& operator()(std::size_t k, std::size_t l) const {
    return data_[k * frames_ + l];
  }

  std::span<T> row(std::size_t k) { return {data_.data() + k * frames_, frames_}; }
  std::span<const T> row(std::size_t k) const {
    return {data_.data() + k * frames_, frames_};
  }

  std::vector<T> column(std::size_t l) const {
    std::vector<T> out(bins_);
    for (std::size_t k = 0; k < bins_; ++k) out[k] = (*this)(k, l);
    return out;
  }
  void set_column(std::size_t l, std::span<const T> values) {
    if (values.size() != bins_) throw ShapeMismatch("column length does not match bin count");
    for (std::size_t k = 0; k < bins_; ++k) (*this)(k, l) = values[k];
  }

  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

  bool same_shape(const Grid& other) const {
    return bins_ == other.bins_ && frames_ == other.frames_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t bins_ = 0;
  std::size_t frames_ = 0;
  std::vector<T> data_;
};

using RealGrid = Grid<double>;
using ComplexGrid = Grid<std::complex<double>>;

/// K x L grid of power values (noise PSD tracks, periodograms).
using PowerGrid = RealGrid;

}  // namespace sppkit
