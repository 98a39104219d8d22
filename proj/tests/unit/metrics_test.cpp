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
#include <random>

#include "oracles.hpp"
#include "sppkit/errors.hpp"
#include "sppkit/metrics.hpp"

namespace sppkit {
namespace {

TEST(LogErr, Examples) {
  PowerGrid ref(3, 4, 2.0);
  EXPECT_EQ(log_err(ref, ref), 0.0);
  PowerGrid ten(3, 4, 20.0);
  EXPECT_NEAR(log_err(ref, ten), 10.0, 1e-12);

  PowerGrid half = ref;
  for (std::size_t l = 0; l < 2; ++l) {
    for (std::size_t k = 0; k < 3; ++k) half(k, l) = 1.0;
  }
  EXPECT_NEAR(log_err(ref, half), 1.5051499783199058, 1e-12);
  EXPECT_THROW(log_err(ref, PowerGrid(3, 3, 1.0)), ShapeMismatch);
}

TEST(LogErr, SymmetricAndMatchesOracle) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-6.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    PowerGrid a(5, 7), b(5, 7);
    for (double& v : a.values()) v = std::pow(10.0, u(rng));
    for (double& v : b.values()) v = std::pow(10.0, u(rng));
    EXPECT_DOUBLE_EQ(log_err(a, b), log_err(b, a));
    EXPECT_NEAR(log_err(a, b), oracle::log_err(a.values(), b.values(), kNoiseFloor), 1e-10);
  }
}

TEST(Roc, PerfectDetectorPassesThroughCorner) {
  const std::vector<double> truth{0, 0, 1, 1, 0, 1};
  const RocCurve c = roc(truth, truth);
  bool corner = false;
  for (const auto& p : c.points) corner |= (p.pfa == 0.0 && p.pd == 1.0);
  EXPECT_TRUE(corner);
  EXPECT_DOUBLE_EQ(auc(c), 1.0);
  EXPECT_DOUBLE_EQ(pd_at_pfa(c, 0.05), 1.0);
}

TEST(Roc, EndpointsAndMonotonicity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(500), t(500);
  for (std::size_t i = 0; i < s.size(); ++i) {
    t[i] = u(rng);
    s[i] = std::round(10.0 * (0.5 * t[i] + 0.5 * u(rng))) / 10.0;  // with ties
  }
  const RocCurve c = roc(s, t);
  ASSERT_GE(c.points.size(), 2u);
  EXPECT_EQ(c.points.front().pfa, 0.0);
  EXPECT_EQ(c.points.front().pd, 0.0);
  EXPECT_DOUBLE_EQ(c.points.back().pfa, 1.0);
  EXPECT_DOUBLE_EQ(c.points.back().pd, 1.0);
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    EXPECT_GE(c.points[i].pfa, c.points[i - 1].pfa);
    EXPECT_GE(c.points[i].pd, c.points[i - 1].pd);
    EXPECT_LT(c.thresholds[i], c.thresholds[i - 1]);
  }
}

TEST(Roc, RandomScoresGiveChanceArea) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(200000), t(200000);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = u(rng);
    t[i] = u(rng);
  }
  EXPECT_NEAR(auc(roc(s, t)), 0.5, 0.02);
}

TEST(Roc, AreaInvariantUnderMonotoneTransform) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> s(300), t(300), s2(300), s3(300);
    for (std::size_t i = 0; i < s.size(); ++i) {
      t[i] = u(rng);
      s[i] = 0.6 * t[i] + 0.4 * u(rng);
      s2[i] = std::exp(5.0 * s[i]);
      s3[i] = std::atan(s[i] * 3.0 - 1.0);
    }
    const double a = auc(roc(s, t));
    EXPECT_NEAR(auc(roc(s2, t)), a, 1e-12);
    EXPECT_NEAR(auc(roc(s3, t)), a, 1e-12);
  }
}

TEST(Roc, SingleClassIsRejected) {
  const std::vector<double> s{0.1, 0.2};
  EXPECT_THROW(roc(s, std::vector<double>{0.0, 0.0}), ValidationError);
  EXPECT_THROW(roc(s, std::vector<double>{1.0, 1.0}), ValidationError);
  EXPECT_THROW(roc(s, std::vector<double>{1.0}), ShapeMismatch);
}

TEST(Roc, DefaultThreshold) {
  EXPECT_DOUBLE_EQ(kDefaultLabelThreshold, 0.135);
  const std::vector<double> s{0.9, 0.1};
  const RocCurve c = roc(s, std::vector<double>{0.135, 0.1349});
  EXPECT_DOUBLE_EQ(auc(c), 1.0);
}

TEST(Auc, Geometry) {
  RocCurve diag{{{0, 0}, {1, 1}}, {1, 0}};
  EXPECT_DOUBLE_EQ(auc(diag), 0.5);
  RocCurve three{{{0, 0}, {0.5, 1}, {1, 1}}, {2, 1, 0}};
  EXPECT_DOUBLE_EQ(auc(three), 0.75);
  RocCurve perfect{{{0, 0}, {0, 1}, {1, 1}}, {2, 1, 0}};
  EXPECT_DOUBLE_EQ(auc(perfect), 1.0);
}

TEST(PdAtPfa, Interpolation) {
  RocCurve perfect{{{0, 0}, {0, 1}, {1, 1}}, {2, 1, 0}};
  EXPECT_DOUBLE_EQ(pd_at_pfa(perfect, 0.05), 1.0);
  RocCurve diag{{{0, 0}, {1, 1}}, {1, 0}};
  EXPECT_DOUBLE_EQ(pd_at_pfa(diag, 0.05), 0.05);
  RocCurve piece{{{0, 0}, {0.1, 0.8}, {1, 1}}, {2, 1, 0}};
  EXPECT_DOUBLE_EQ(pd_at_pfa(piece, 0.05), 0.4);
  EXPECT_DOUBLE_EQ(pd_at_pfa(piece, 0.1), 0.8);
}

TEST(RocCsv, HasHeaderAndOneRowPerPoint) {
  RocCurve diag{{{0, 0}, {1, 1}}, {1, 0}};
  const std::string csv = roc_csv(diag);
  EXPECT_EQ(csv.rfind("threshold,pfa,pd\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(KlDivergence, Examples) {
  const std::vector<double> t{0.2, 0.7, 0.0};
  EXPECT_NEAR(kl_divergence(t, t), 0.0, 1e-15);
  EXPECT_NEAR(kl_divergence(std::vector<double>{0.5}, std::vector<double>{0.25}),
              0.5 * std::log(2.0), 1e-12);
  EXPECT_EQ(kl_divergence(std::vector<double>{0.0}, std::vector<double>{0.9}), 0.0);
  EXPECT_THROW(kl_divergence(std::vector<double>{0.5}, std::vector<double>{0.5, 0.5}),
               ShapeMismatch);
}

TEST(KlDivergence, ClampsZeroEstimate) {
  const double v = kl_divergence(std::vector<double>{1.0}, std::vector<double>{0.0});
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(v, (1 - 1e-7) * std::log((1 - 1e-7) / 1e-7), 1e-9);
}

TEST(KlDivergence, FullBinaryIsNonNegative) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> t(20), e(20);
    for (auto& v : t) v = u(rng) < 0.2 ? 0.0 : u(rng);
    for (auto& v : e) v = u(rng) < 0.1 ? 1.0 : u(rng);
    const double d = kl_divergence(t, e, kDefaultKlEps, KlForm::kBinary);
    EXPECT_GE(d, -1e-15);
    EXPECT_NEAR(d, oracle::kl(t, e, kDefaultKlEps, true), 1e-10);
    EXPECT_NEAR(kl_divergence(t, e), oracle::kl(t, e, kDefaultKlEps, false), 1e-10);
  }
  std::vector<double> t{0.3, 0.6};
  EXPECT_NEAR(kl_divergence(t, t, kDefaultKlEps, KlForm::kBinary), 0.0, 1e-15);
}

TEST(KlDivergence, PrintedFormCanBeNegative) {
  // t ln(t / e) alone is not a divergence: an estimate above the target
  // drives it below zero.
  EXPECT_LT(kl_divergence(std::vector<double>{0.3}, std::vector<double>{0.9}), 0.0);
}

AudioBuffer noise_buffer(std::size_t n, std::uint64_t seed, double sigma) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, sigma);
  AudioBuffer a;
  a.samples.resize(n);
  for (double& s : a.samples) s = d(rng);
  return a;
}

TEST(SegmentalSnr, IdenticalSignalsHitCeiling) {
  const AudioBuffer a = noise_buffer(4096, 1, 0.1);
  EXPECT_DOUBLE_EQ(segmental_snr(a, a), 35.0);
}

TEST(SegmentalSnr, ZeroEstimateGivesZeroDb) {
  const AudioBuffer a = noise_buffer(4096, 1, 0.1);
  AudioBuffer zero = a;
  std::fill(zero.samples.begin(), zero.samples.end(), 0.0);
  // The error equals the reference, so every frame scores 0 dB.
  EXPECT_NEAR(segmental_snr(a, zero), 0.0, 1e-12);
}

TEST(SegmentalSnr, HeavyErrorClampsAtFloor) {
  const AudioBuffer a = noise_buffer(4096, 1, 0.1);
  AudioBuffer bad = a;
  for (double& s : bad.samples) s *= -20.0;
  EXPECT_DOUBLE_EQ(segmental_snr(a, bad), -10.0);
}

TEST(SegmentalSnr, ConstructedTenDbFixture) {
  const AudioBuffer ref = noise_buffer(256 * 40, 3, 0.2);
  const AudioBuffer err = noise_buffer(ref.size(), 4, 1.0);
  AudioBuffer est = ref;
  for (std::size_t f = 0; f < 40; ++f) {
    double pr = 0.0, pe = 0.0;
    for (std::size_t i = f * 256; i < (f + 1) * 256; ++i) {
      pr += ref.samples[i] * ref.samples[i];
      pe += err.samples[i] * err.samples[i];
    }
    const double scale = std::sqrt(pr / pe / 10.0);
    for (std::size_t i = f * 256; i < (f + 1) * 256; ++i) est.samples[i] += scale * err.samples[i];
  }
  EXPECT_NEAR(segmental_snr(ref, est), 10.0, 1e-9);
}

TEST(SegmentalSnr, SkipsSilentFramesAndRejectsMismatch) {
  AudioBuffer ref = noise_buffer(256 * 4, 5, 0.1);
  std::fill(ref.samples.begin(), ref.samples.begin() + 512, 0.0);
  AudioBuffer est = ref;
  for (std::size_t i = 0; i < 512; ++i) est.samples[i] = 0.5;
  EXPECT_DOUBLE_EQ(segmental_snr(ref, est), 35.0);
  AudioBuffer shorter = ref;
  shorter.samples.pop_back();
  EXPECT_THROW(segmental_snr(ref, shorter), ShapeMismatch);
}

}  // namespace
}  // namespace sppkit
