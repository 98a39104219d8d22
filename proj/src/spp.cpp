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

#include "sppkit/spp.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sppkit/errors.hpp"

namespace sppkit {
namespace {

void require_positive_noise(double phi_n) {
  if (!(phi_n > 0.0)) throw DomainError("noise PSD must be positive");
}

}  // namespace

void FixedPriorParams::validate() const {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidConfig("beta must lie in (0, 1)");
  if (!(lambda_cap > 0.0 && lambda_cap < 1.0)) {
    throw InvalidConfig("lambda_cap must lie in (0, 1)");
  }
  if (!(alpha_prior > 0.0)) throw InvalidConfig("alpha_prior must be positive");
  if (!std::isfinite(xi_h1_db)) throw InvalidConfig("xi_h1_db must be finite");
}

double FixedPriorParams::xi_h1() const { return std::pow(10.0, xi_h1_db / 10.0); }

SppMap::SppMap(RealGrid values) : values_(std::move(values)) {
  for (double v : values_.values()) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("SPP map entry outside [0, 1]");
  }
}

double likelihood_h0(double y_pow, double phi_n) {
  require_positive_noise(phi_n);
  return std::exp(-y_pow / phi_n) / (std::numbers::pi * phi_n);
}

double likelihood_h1(double y_pow, double phi_n, double xi) {
  require_positive_noise(phi_n);
  if (!(xi >= 0.0)) throw DomainError("a priori SNR must be non-negative");
  const double total = phi_n * (1.0 + xi);
  return std::exp(-y_pow / total) / (std::numbers::pi * total);
}

double posterior_spp(double y_pow, double phi_n, double xi, double alpha) {
  require_positive_noise(phi_n);
  const double gamma = y_pow / phi_n;
  const double odds = alpha * (1.0 + xi) * std::exp(-gamma * xi / (1.0 + xi));
  return 1.0 / (1.0 + odds);
}

double posterior_spp_fixed_prior(double y_pow, double phi_n, const FixedPriorParams& params) {
  return posterior_spp(y_pow, phi_n, params.xi_h1(), params.alpha_prior);
}

std::vector<double> smooth_and_clamp(std::span<const double> p_raw, SppSmootherState& state,
                                     const FixedPriorParams& params) {
  if (state.p_smoothed.size() != p_raw.size()) {
    throw ShapeMismatch("smoother state has " + std::to_string(state.p_smoothed.size()) +
                        " bins, frame has " + std::to_string(p_raw.size()));
  }
  std::vector<double> out(p_raw.size());
  for (std::size_t k = 0; k < p_raw.size(); ++k) {
    double& smoothed = state.p_smoothed[k];
    smoothed = params.beta * smoothed + (1.0 - params.beta) * p_raw[k];
    out[k] = smoothed > params.lambda_cap ? std::min(params.lambda_cap, p_raw[k]) : p_raw[k];
  }
  return out;
}

double wiener_gain(double phi_x, double phi_n) {
  if (!(phi_x >= 0.0) || !(phi_n >= 0.0)) throw DomainError("PSDs must be non-negative");
  if (phi_x + phi_n <= 0.0) throw DomainError("speech and noise PSD are both zero");
  return phi_x / (phi_x + phi_n);
}

double oracle_target_spp(double y_pow, double phi_x, double phi_n, double xi_eps) {
  require_positive_noise(phi_n);
  if (!(phi_x >= 0.0)) throw DomainError("speech PSD must be non-negative");
  const double xi = phi_x / phi_n;
  if (xi < xi_eps) return 0.0;
  const double gamma = y_pow / phi_n;
  const double odds = (1.0 + 1.0 / xi) * std::exp(-gamma * xi / (1.0 + xi));
  return 1.0 / (1.0 + odds);
}

SppMap target_map(const Spectrogram& clean, const Spectrogram& noise,
                  const Spectrogram& noisy, double xi_eps) {
  if (!clean.data.same_shape(noise.data) || !clean.data.same_shape(noisy.data)) {
    throw ShapeMismatch("clean, noise and noisy spectrograms must share one shape");
  }
  double residual = 0.0;
  double reference = 0.0;
  const auto& x = clean.data.values();
  const auto& n = noise.data.values();
  const auto& y = noisy.data.values();
  for (std::size_t i = 0; i < y.size(); ++i) {
    residual += std::norm(y[i] - (x[i] + n[i]));
    reference += std::norm(y[i]);
  }
  if (std::sqrt(residual) > 1e-6 * std::sqrt(reference) + 1e-12) {
    throw ValidationError("noisy spectrogram is not the sum of clean and noise");
  }

  RealGrid out(noisy.bins(), noisy.frames());
  auto& dst = out.values();
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double phi_n = std::norm(n[i]);
    // A bin without noise energy carries no noise evidence; the ratio form
    // below degenerates, so treat it as certain presence when speech exists.
    if (phi_n <= 0.0) {
      dst[i] = std::norm(x[i]) > 0.0 ? 1.0 : 0.0;
      continue;
    }
    dst[i] = oracle_target_spp(std::norm(y[i]), std::norm(x[i]), phi_n, xi_eps);
  }
  return SppMap(std::move(out));
}

}  // namespace sppkit
