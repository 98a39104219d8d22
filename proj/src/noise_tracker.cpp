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

#include "sppkit/noise_tracker.hpp"

#include <algorithm>
#include <string>

#include "sppkit/errors.hpp"

namespace sppkit {
namespace {

void require_bins(const NoiseTrackerState& state, std::size_t n) {
  if (n != state.phi_n_hat.size()) {
    throw ShapeMismatch("noise tracker has " + std::to_string(state.phi_n_hat.size()) +
                        " bins, frame has " + std::to_string(n));
  }
}

}  // namespace

void NoiseTrackerConfig::validate() const {
  if (!(smoothing > 0.0 && smoothing < 1.0)) {
    throw InvalidConfig("noise smoothing factor must lie in (0, 1)");
  }
  if (!(floor > 0.0)) throw InvalidConfig("noise floor must be positive");
}

NoiseTrackerState::NoiseTrackerState(std::size_t bins, NoiseTrackerConfig cfg)
    : phi_n_hat(bins, cfg.floor), config(cfg) {
  config.validate();
}

void NoiseTrackerState::seed(std::span<const double> psd) {
  require_bins(*this, psd.size());
  for (std::size_t k = 0; k < psd.size(); ++k) {
    phi_n_hat[k] = std::max(psd[k], config.floor);
  }
  frames_seen = std::max(frames_seen, config.init_frames);
}

void init_noise_psd(NoiseTrackerState& state, std::span<const double> y_pow_frame) {
  if (state.initialized()) throw InvalidConfig("noise tracker is already initialised");
  require_bins(state, y_pow_frame.size());
  const double n = static_cast<double>(state.frames_seen + 1);
  for (std::size_t k = 0; k < y_pow_frame.size(); ++k) {
    double& est = state.phi_n_hat[k];
    const double prev = state.frames_seen == 0 ? 0.0 : est;
    est = prev + (y_pow_frame[k] - prev) / n;
  }
  ++state.frames_seen;
  if (state.initialized()) {
    for (double& v : state.phi_n_hat) v = std::max(v, state.config.floor);
  }
}

double suboptimal_mmse(double p_spp, double y_pow, double floor) {
  return std::max((1.0 - p_spp) * y_pow, floor);
}

std::span<const double> suboptimal_mmse_step(NoiseTrackerState& state,
                                             std::span<const double> p_spp,
                                             std::span<const double> y_pow) {
  require_bins(state, p_spp.size());
  require_bins(state, y_pow.size());
  for (std::size_t k = 0; k < y_pow.size(); ++k) {
    state.phi_n_hat[k] = suboptimal_mmse(p_spp[k], y_pow[k], state.config.floor);
  }
  ++state.frames_seen;
  return state.phi_n_hat;
}

std::span<const double> optimal_mmse_step(NoiseTrackerState& state,
                                          std::span<const double> p_spp,
                                          std::span<const double> y_pow) {
  if (!state.initialized()) throw InvalidConfig("noise tracker is not initialised");
  require_bins(state, p_spp.size());
  require_bins(state, y_pow.size());
  const double c = state.config.smoothing;
  for (std::size_t k = 0; k < y_pow.size(); ++k) {
    const double prev = state.phi_n_hat[k];
    const double expected = (1.0 - p_spp[k]) * y_pow[k] + p_spp[k] * prev;
    state.phi_n_hat[k] = std::max(c * prev + (1.0 - c) * expected, state.config.floor);
  }
  ++state.frames_seen;
  return state.phi_n_hat;
}

std::span<const double> track_noise_frame(NoiseTrackerState& state, TrackerKind kind,
                                          std::span<const double> p_spp,
                                          std::span<const double> y_pow) {
  if (kind == TrackerKind::kSuboptimal) return suboptimal_mmse_step(state, p_spp, y_pow);
  if (!state.initialized()) {
    init_noise_psd(state, y_pow);
    if (!state.initialized()) {
      for (double& v : state.phi_n_hat) v = std::max(v, state.config.floor);
    }
    return state.phi_n_hat;
  }
  return optimal_mmse_step(state, p_spp, y_pow);
}

}  // namespace sppkit
