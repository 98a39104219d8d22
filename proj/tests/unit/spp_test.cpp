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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sppkit/errors.hpp"
#include "sppkit/spp.hpp"

namespace sppkit {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Likelihood, H0Examples) {
  EXPECT_NEAR(likelihood_h0(0.0, 1.0), 1.0 / kPi, 1e-15);
  EXPECT_NEAR(likelihood_h0(1.0, 1.0), 1.0 / (kPi * std::numbers::e), 1e-15);
  EXPECT_NEAR(likelihood_h0(2.0, 0.5), 2.0 / kPi * std::exp(-4.0), 1e-15);
  EXPECT_THROW(likelihood_h0(1.0, 0.0), DomainError);
  EXPECT_THROW(likelihood_h0(1.0, -1.0), DomainError);
}

TEST(Likelihood, H1Examples) {
  EXPECT_DOUBLE_EQ(likelihood_h1(1.3, 0.7, 0.0), likelihood_h0(1.3, 0.7));
  EXPECT_NEAR(likelihood_h1(0.0, 1.0, 1.0), 1.0 / (2.0 * kPi), 1e-15);
  EXPECT_NEAR(likelihood_h1(2.0, 1.0, 3.0), std::exp(-0.5) / (4.0 * kPi), 1e-15);
  EXPECT_THROW(likelihood_h1(1.0, 0.0, 1.0), DomainError);
}

TEST(PosteriorSpp, Examples) {
  EXPECT_NEAR(posterior_spp_fixed_prior(0.0, 1.0), 1.0 / (2.0 + std::pow(10.0, 1.5)), 1e-15);
  EXPECT_NEAR(posterior_spp_fixed_prior(0.0, 1.0), 0.02974, 1e-5);
  EXPECT_NEAR(posterior_spp_fixed_prior(1e6, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(posterior_spp_fixed_prior(10.0, 1.0), oracle::fixed_prior_posterior(10.0, 1.0, 15.0, 1.0),
              1e-15);
  EXPECT_THROW(posterior_spp_fixed_prior(1.0, 0.0), DomainError);
}

TEST(PosteriorSpp, BayesConsistency) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FixedPriorParams params;
  for (int i = 0; i < 500; ++i) {
    const double phi = std::pow(10.0, -3.0 + 4.0 * u(rng));
    const double y = phi * 20.0 * u(rng);
    const double l0 = likelihood_h0(y, phi);
    const double l1 = likelihood_h1(y, phi, params.xi_h1());
    const double bayes = 0.5 * l1 / (0.5 * l1 + 0.5 * l0);
    EXPECT_NEAR(posterior_spp_fixed_prior(y, phi, params), bayes, 1e-12);
  }
}

TEST(PosteriorSpp, StrictlyIncreasingInPower) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double phi = 0.1 + u(rng);
    const double phi_x = 0.1 + 3.0 * u(rng);
    double prev_a = -1.0, prev_b = -1.0;
    for (double y = 0.0; y < 8.0 * phi; y += 0.25 * phi) {
      const double a = posterior_spp_fixed_prior(y, phi);
      const double b = oracle_target_spp(y, phi_x, phi);
      EXPECT_GT(a, prev_a);
      EXPECT_GT(b, prev_b);
      prev_a = a;
      prev_b = b;
    }
  }
}

TEST(PosteriorSpp, AlwaysAProbability) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double phi = std::pow(10.0, -10.0 + 20.0 * u(rng));
    const double y = phi * std::pow(10.0, -5.0 + 10.0 * u(rng));
    const double xi = std::pow(10.0, -5.0 + 10.0 * u(rng));
    const double alpha = std::pow(10.0, -3.0 + 6.0 * u(rng));
    const double p = posterior_spp(y, phi, xi, alpha);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    const double t = oracle_target_spp(y, xi * phi, phi);
    EXPECT_GE(t, 0.0);
    EXPECT_LE(t, 1.0);
  }
}

TEST(FixedPriorParams, Validation) {
  EXPECT_NO_THROW(FixedPriorParams{}.validate());
  EXPECT_THROW((FixedPriorParams{15.0, 1.0, 1.0, 0.99}.validate()), InvalidConfig);
  EXPECT_THROW((FixedPriorParams{15.0, 1.0, 0.9, 1.0}.validate()), InvalidConfig);
  EXPECT_THROW((FixedPriorParams{15.0, 0.0, 0.9, 0.99}.validate()), InvalidConfig);
  EXPECT_NEAR(FixedPriorParams{}.xi_h1(), 31.622776601683793, 1e-12);
}

TEST(SmoothAndClamp, Examples) {
  SppSmootherState s(1);
  std::vector<double> p = smooth_and_clamp(std::vector<double>{0.0}, s);
  EXPECT_EQ(p[0], 0.0);
  EXPECT_EQ(s.p_smoothed[0], 0.0);

  s.p_smoothed[0] = 1.0;
  p = smooth_and_clamp(std::vector<double>{1.0}, s);
  EXPECT_DOUBLE_EQ(s.p_smoothed[0], 1.0);
  EXPECT_DOUBLE_EQ(p[0], 0.99);

  s.p_smoothed[0] = 0.5;
  p = smooth_and_clamp(std::vector<double>{1.0}, s);
  EXPECT_NEAR(s.p_smoothed[0], 0.55, 1e-15);
  EXPECT_DOUBLE_EQ(p[0], 1.0);
}

TEST(SmoothAndClamp, StaysInUnitInterval) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double beta : {0.01, 0.5, 0.9, 0.999}) {
    FixedPriorParams params;
    params.beta = beta;
    SppSmootherState s(16);
    for (int l = 0; l < 200; ++l) {
      std::vector<double> raw(16);
      for (double& v : raw) v = u(rng) < 0.3 ? 1.0 : u(rng);
      for (double v : smooth_and_clamp(raw, s, params)) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
      for (double v : s.p_smoothed) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
  }
}

TEST(SmoothAndClamp, ShapeMismatch) {
  SppSmootherState s(3);
  EXPECT_THROW(smooth_and_clamp(std::vector<double>(4, 0.0), s), ShapeMismatch);
}

TEST(WienerGain, Examples) {
  EXPECT_DOUBLE_EQ(wiener_gain(2.0, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(wiener_gain(0.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(wiener_gain(3.0, 1.0), 0.75);
  EXPECT_THROW(wiener_gain(0.0, 0.0), DomainError);
}

TEST(OracleTarget, Examples) {
  EXPECT_EQ(oracle_target_spp(5.0, 1e-12, 1.0), 0.0);
  EXPECT_NEAR(oracle_target_spp(5.0, 1e-9, 1.0), 0.0, 1e-8);
  EXPECT_NEAR(oracle_target_spp(0.0, 1.0, 1.0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(oracle_target_spp(4.0, 1.0, 1.0), 1.0 / (1.0 + 2.0 * std::exp(-2.0)), 1e-15);
  EXPECT_NEAR(oracle_target_spp(4.0, 1.0, 1.0), 0.78698, 1e-5);
  EXPECT_NEAR(oracle_target_spp(4.0, 1.0, 1.0), oracle::learning_target(4.0, 1.0, 1.0, 1e-10),
              1e-15);
  EXPECT_THROW(oracle_target_spp(1.0, 1.0, 0.0), DomainError);
}

TEST(OracleTarget, EqualsFixedPriorFormWithAdaptivePrior) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double phi_n = std::pow(10.0, -4.0 + 6.0 * u(rng));
    const double xi = std::pow(10.0, -3.0 + 6.0 * u(rng));
    const double y = phi_n * 30.0 * u(rng);
    EXPECT_NEAR(oracle_target_spp(y, xi * phi_n, phi_n), posterior_spp(y, phi_n, xi, 1.0 / xi),
                1e-12);
  }
}

Spectrogram spectrogram_of(std::initializer_list<std::complex<double>> values) {
  Spectrogram s{ComplexGrid(1, values.size()), StftConfig{}};
  std::size_t l = 0;
  for (auto v : values) s.data(0, l++) = v;
  return s;
}

TEST(TargetMap, SingleBinMatchesScalar) {
  const auto clean = spectrogram_of({{1.0, 0.5}, {0.0, 0.0}, {2.0, -1.0}});
  const auto noise = spectrogram_of({{0.3, 0.1}, {0.5, 0.5}, {0.0, 0.0}});
  const auto noisy = spectrogram_of({{1.3, 0.6}, {0.5, 0.5}, {2.0, -1.0}});
  const SppMap m = target_map(clean, noise, noisy);
  EXPECT_NEAR(m(0, 0), oracle_target_spp(std::norm(noisy.data(0, 0)), std::norm(clean.data(0, 0)),
                                         std::norm(noise.data(0, 0))),
              1e-15);
  EXPECT_EQ(m(0, 1), 0.0);
  // Zero noise energy with speech present.
  EXPECT_EQ(m(0, 2), 1.0);
}

TEST(TargetMap, NoiseOnlyIsZero) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  Spectrogram clean{ComplexGrid(129, 30), StftConfig{}};
  Spectrogram noise{ComplexGrid(129, 30), StftConfig{}};
  for (auto& v : noise.data.values()) v = {n(rng), n(rng)};
  const SppMap m = target_map(clean, noise, noise);
  for (double v : m.values().values()) EXPECT_EQ(v, 0.0);
}

TEST(TargetMap, RejectsShapeAndAdditivityViolations) {
  const auto a = spectrogram_of({{1.0, 0.0}, {1.0, 0.0}});
  const auto b = spectrogram_of({{1.0, 0.0}});
  EXPECT_THROW(target_map(a, b, a), ShapeMismatch);
  EXPECT_THROW(target_map(a, a, a), ValidationError);
}

TEST(SppMap, RejectsOutOfRange) {
  EXPECT_THROW(SppMap(RealGrid(2, 2, 1.5)), ValidationError);
  EXPECT_THROW(SppMap(RealGrid(2, 2, -0.1)), ValidationError);
  EXPECT_THROW(SppMap(RealGrid(2, 2, std::nan(""))), ValidationError);
  EXPECT_NO_THROW(SppMap(RealGrid(2, 2, 1.0)));
}

}  // namespace
}  // namespace sppkit
