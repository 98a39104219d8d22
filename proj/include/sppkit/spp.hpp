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

#include <span>
#include <vector>

#include "sppkit/grid.hpp"
#include "sppkit/stft.hpp"

namespace sppkit {

/// Parameters of the fixed-prior a posteriori SPP estimator.
struct FixedPriorParams {
  double xi_h1_db = 15.0;    ///< fixed a priori SNR under speech presence
  double alpha_prior = 1.0;  ///< p(H0) / p(H1)
  double beta = 0.9;         ///< recursive smoothing factor
  double lambda_cap = 0.99;  ///< stagnation cap

  void validate() const;
  double xi_h1() const;
};

/// K x L map of probabilities, every entry in [0, 1].
class SppMap {
 public:
  SppMap() = default;
  /// Throws ValidationError if any entry is outside [0, 1] or non-finite.
  explicit SppMap(RealGrid values);

  std::size_t bins() const { return values_.bins(); }
  std::size_t frames() const { return values_.frames(); }
  double operator()(std::size_t k, std::size_t l) const { return values_(k, l); }
  const RealGrid& values() const { return values_; }

 private:
  RealGrid values_;
};

/// Complex-Gaussian likelihood of |Y|^2 = y_pow under speech absence.
double likelihood_h0(double y_pow, double phi_n);
/// Likelihood under speech presence with a priori SNR xi.
double likelihood_h1(double y_pow, double phi_n, double xi);

/// a posteriori SPP for an arbitrary prior ratio alpha = p(H0)/p(H1) and
/// a priori SNR xi.
double posterior_spp(double y_pow, double phi_n, double xi, double alpha);

/// a posteriori SPP with the fixed a priori SNR and prior ratio of `params`.
double posterior_spp_fixed_prior(double y_pow, double phi_n,
                                 const FixedPriorParams& params = {});

struct SppSmootherState {
  std::vector<double> p_smoothed;

  explicit SppSmootherState(std::size_t bins = 0) : p_smoothed(bins, 0.0) {}
};

/// Updates the recursively smoothed probability and caps the returned
/// probability at lambda wherever the smoothed value exceeds lambda.
std::vector<double> smooth_and_clamp(std::span<const double> p_raw, SppSmootherState& state,
                                     const FixedPriorParams& params = {});

/// phi_x / (phi_x + phi_n).
double wiener_gain(double phi_x, double phi_n);

inline constexpr double kDefaultXiEps = 1e-10;

/// Learning-target SPP: the a posteriori SPP with the actual a priori SNR
/// xi = phi_x / phi_n and the Wiener gain as a priori SPP. Returns 0 below
/// the xi floor.
double oracle_target_spp(double y_pow, double phi_x, double phi_n,
                         double xi_eps = kDefaultXiEps);

/// Per-bin learning target built from the instantaneous periodograms of the
/// clean and noise components. Requires noisy == clean + noise.
SppMap target_map(const Spectrogram& clean, const Spectrogram& noise,
                  const Spectrogram& noisy, double xi_eps = kDefaultXiEps);

}  // namespace sppkit
