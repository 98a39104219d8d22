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

#include "sppkit/features.hpp"

#include <algorithm>
#include <cmath>

namespace sppkit {

void NormStats::validate() const {
  if (!(std > 0.0) || !std::isfinite(std) || !std::isfinite(mean)) {
    throw InvalidConfig("normalisation std must be finite and positive");
  }
}

LogPowerFeatures log_power(const Spectrogram& spec, double floor) {
  if (!(floor > 0.0)) throw InvalidConfig("log-power floor must be positive");
  LogPowerFeatures out{RealGrid(spec.bins(), spec.frames()), std::nullopt};
  const auto& src = spec.data.values();
  auto& dst = out.values.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double p = std::norm(src[i]);
    // max() with NaN-safe ordering: any non-finite power collapses to floor.
    dst[i] = std::log(std::isfinite(p) ? std::max(p, floor) : floor);
  }
  return out;
}

LogPowerFeatures normalize(const LogPowerFeatures& features, const NormStats& stats) {
  stats.validate();
  if (features.normalization) {
    throw InvalidConfig("features are already normalised");
  }
  LogPowerFeatures out{features.values, stats};
  for (double& x : out.values.values()) x = (x - stats.mean) / stats.std;
  return out;
}

void NormStatsAccumulator::add(const LogPowerFeatures& features) {
  // Welford update.
  for (double x : features.values.values()) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
}

void NormStatsAccumulator::merge(const NormStatsAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double n_a = static_cast<double>(count_);
  const double n_b = static_cast<double>(other.count_);
  const double delta = other.mean_ - mean_;
  const double n = n_a + n_b;
  mean_ += delta * n_b / n;
  m2_ += other.m2_ + delta * delta * n_a * n_b / n;
  count_ += other.count_;
}

NormStats NormStatsAccumulator::finish() const {
  if (count_ < 2) throw ValidationError("not enough feature values for statistics");
  NormStats stats{mean_, std::sqrt(m2_ / static_cast<double>(count_))};
  if (!(stats.std > 0.0)) throw ValidationError("feature values have zero variance");
  return stats;
}

}  // namespace sppkit
