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

#include <optional>

#include "sppkit/grid.hpp"
#include "sppkit/stft.hpp"

namespace sppkit {

inline constexpr double kDefaultPowerFloor = 1e-12;

/// Global normalisation statistics of the log-power features.
struct NormStats {
  double mean = 0.0;
  double std = 1.0;

  void validate() const;
  friend bool operator==(const NormStats&, const NormStats&) = default;
};

/// K x L natural-log power. `normalization` records the statistics the
/// values were standardised with, if any.
struct LogPowerFeatures {
  RealGrid values;
  std::optional<NormStats> normalization;
};

/// out(k, l) = ln(max(|Y(k, l)|^2, floor)).
LogPowerFeatures log_power(const Spectrogram& spec, double floor = kDefaultPowerFloor);

/// (x - mean) / std elementwise. Input must not already be normalised.
LogPowerFeatures normalize(const LogPowerFeatures& features, const NormStats& stats);

/// Streaming mean / standard deviation accumulator over feature values.
class NormStatsAccumulator {
 public:
  void add(const LogPowerFeatures& features);
  void merge(const NormStatsAccumulator& other);
  std::size_t count() const { return count_; }
  /// Throws ValidationError when empty or when the variance is zero.
  NormStats finish() const;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace sppkit
