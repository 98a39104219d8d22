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

#include "sppkit/lsa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sppkit/errors.hpp"
#include "sppkit/expint.hpp"

namespace sppkit {

double db_to_power(double db) { return std::pow(10.0, db / 10.0); }

double aposteriori_snr(double y_pow, double phi_n_hat, double floor) {
  return y_pow / std::max(phi_n_hat, floor);
}

double ml_apriori_snr(double gamma) { return std::max(0.0, gamma - 1.0); }

void DdState::commit(std::span<const double> y_pow, std::span<const double> phi_n,
                     std::span<const double> gain) {
  if (y_pow.size() != prev_y_pow.size() || phi_n.size() != prev_y_pow.size() ||
      gain.size() != prev_y_pow.size()) {
    throw ShapeMismatch("decision-directed state size mismatch");
  }
  std::copy(y_pow.begin(), y_pow.end(), prev_y_pow.begin());
  std::copy(phi_n.begin(), phi_n.end(), prev_phi_n.begin());
  std::copy(gain.begin(), gain.end(), prev_gain.begin());
  first_frame = false;
}

std::vector<double> dd_apriori_snr(const DdState& state, std::span<const double> gamma,
                                   double alpha_snr, double xi_floor, DdMode mode) {
  if (!(alpha_snr >= 0.0 && alpha_snr < 1.0)) {
    throw InvalidConfig("alpha_snr must lie in [0, 1)");
  }
  if (gamma.size() != state.prev_y_pow.size()) {
    throw ShapeMismatch("gamma has " + std::to_string(gamma.size()) + " bins, state has " +
                        std::to_string(state.prev_y_pow.size()));
  }
  std::vector<double> xi(gamma.size());
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    const double ml = ml_apriori_snr(gamma[k]);
    double value = ml;
    if (!state.first_frame) {
      double prev = state.prev_y_pow[k] / std::max(state.prev_phi_n[k], kNoiseFloor);
      if (mode == DdMode::kClassical) prev *= state.prev_gain[k] * state.prev_gain[k];
      value = alpha_snr * prev + (1.0 - alpha_snr) * ml;
    }
    xi[k] = std::max(value, xi_floor);
  }
  return xi;
}

double lsa_gain(double xi, double gamma, double gain_floor) {
  if (!(xi > 0.0)) throw DomainError("a priori SNR must be positive");
  if (!(gamma >= 0.0)) throw DomainError("a posteriori SNR must be non-negative");
  const double ratio = xi / (1.0 + xi);
  const double v = ratio * gamma;
  double gain = 1.0;
  if (v > 0.0) {
    // exp(E1/2) overflows long before the product could fall below 1.
    const double half_e1 = 0.5 * expint_e1(v);
    gain = half_e1 > 700.0 ? 1.0 : std::min(1.0, ratio * std::exp(half_e1));
  }
  return std::max(gain, gain_floor);
}

}  // namespace sppkit
