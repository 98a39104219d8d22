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

#include "sppkit/noise_tracker.hpp"

namespace sppkit {

inline constexpr double kXiFloorDb = -25.0;

double db_to_power(double db);

/// y_pow / phi_n_hat with phi_n_hat clamped up to `floor`.
double aposteriori_snr(double y_pow, double phi_n_hat, double floor = kNoiseFloor);

/// Limited maximum-likelihood a priori SNR, max(0, gamma - 1).
double ml_apriori_snr(double gamma);

/// How the decision-directed rule forms its "previous frame" SNR term.
enum class DdMode {
  kAsPrinted,  ///< |Y(l-1)|^2 / Phi_N(l-1)
  kClassical,  ///< G(l-1)^2 |Y(l-1)|^2 / Phi_N(l-1), the previous enhanced power
};

/// Previous-frame quantities of the decision-directed recursion.
struct DdState {
  std::vector<double> prev_y_pow;
  std::vector<double> prev_phi_n;
  std::vector<double> prev_gain;
  bool first_frame = true;

  explicit DdState(std::size_t bins = 0)
      : prev_y_pow(bins, 0.0), prev_phi_n(bins, 1.0), prev_gain(bins, 1.0) {}

  /// Stores the current frame for use by the next dd_apriori_snr call.
  void commit(std::span<const double> y_pow, std::span<const double> phi_n,
              std::span<const double> gain);
};

/// xi = alpha * prev_ratio + (1 - alpha) * max(0, gamma - 1), floored at
/// `xi_floor` (linear). The first frame falls back to the ML estimate.
std::vector<double> dd_apriori_snr(const DdState& state, std::span<const double> gamma,
                                   double alpha_snr, double xi_floor,
                                   DdMode mode = DdMode::kAsPrinted);

/// Log-spectral-amplitude gain (xi / (1 + xi)) * exp(E1(v) / 2) with
/// v = gamma * xi / (1 + xi). Clamped to at most 1 and raised to
/// `gain_floor` when that is positive. v == 0 yields the clamp value 1.
double lsa_gain(double xi, double gamma, double gain_floor = 0.0);

}  // namespace sppkit
