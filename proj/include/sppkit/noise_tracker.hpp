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

#include <cstddef>
#include <span>
#include <vector>

namespace sppkit {

inline constexpr double kNoiseFloor = 1e-10;

enum class TrackerKind {
  kSuboptimal,  ///< (1 - p) |Y|^2, no temporal smoothing
  kOptimal,     ///< conditional expectation followed by recursive smoothing
};

struct NoiseTrackerConfig {
  double smoothing = 0.8;        ///< c, optimal tracker only
  std::size_t init_frames = 12;  ///< 0.1 s at 8 ms hop
  double floor = kNoiseFloor;

  void validate() const;
};

/// Per-bin noise PSD estimate plus initialisation bookkeeping. One state
/// per stream; frames must be fed in order.
struct NoiseTrackerState {
  std::vector<double> phi_n_hat;
  NoiseTrackerConfig config;
  std::size_t frames_seen = 0;

  NoiseTrackerState(std::size_t bins, NoiseTrackerConfig cfg = {});

  bool initialized() const { return frames_seen >= config.init_frames; }
  /// Replaces the estimate with a known PSD and marks the state initialised.
  void seed(std::span<const double> psd);
};

/// Folds one periodogram into the running mean that initialises the
/// estimate. Throws InvalidConfig once initialisation is complete.
void init_noise_psd(NoiseTrackerState& state, std::span<const double> y_pow_frame);

/// max((1 - p) * y_pow, floor).
double suboptimal_mmse(double p_spp, double y_pow, double floor = kNoiseFloor);

/// Vector form of suboptimal_mmse; stores the result in the state.
std::span<const double> suboptimal_mmse_step(NoiseTrackerState& state,
                                             std::span<const double> p_spp,
                                             std::span<const double> y_pow);

/// E = (1 - p) y + p prev; phi = c prev + (1 - c) E. Requires an
/// initialised state.
std::span<const double> optimal_mmse_step(NoiseTrackerState& state,
                                          std::span<const double> p_spp,
                                          std::span<const double> y_pow);

/// Runs initialisation for the first init_frames frames and the selected
/// tracker afterwards. Returns the estimate for this frame.
std::span<const double> track_noise_frame(NoiseTrackerState& state, TrackerKind kind,
                                          std::span<const double> p_spp,
                                          std::span<const double> y_pow);

}  // namespace sppkit
