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
#include <filesystem>
#include <numeric>

#include "sppkit/datagen.hpp"
#include "sppkit/errors.hpp"
#include "sppkit/stft.hpp"

namespace sppkit {
namespace {

std::vector<double> frame_powers(const AudioBuffer& a, std::size_t frame = 256) {
  std::vector<double> out;
  for (std::size_t start = 0; start + frame <= a.size(); start += frame) {
    double e = 0.0;
    for (std::size_t i = start; i < start + frame; ++i) e += a.samples[i] * a.samples[i];
    out.push_back(e / static_cast<double>(frame));
  }
  return out;
}

double coefficient_of_variation(const std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return std::sqrt(var / static_cast<double>(v.size())) / mean;
}

std::vector<double> average_periodogram(const AudioBuffer& a) {
  const Spectrogram s = stft(a, StftConfig{});
  std::vector<double> psd(s.bins(), 0.0);
  for (std::size_t k = 0; k < s.bins(); ++k) {
    for (std::size_t l = 0; l < s.frames(); ++l) psd[k] += std::norm(s.data(k, l));
    psd[k] /= static_cast<double>(s.frames());
  }
  return psd;
}

TEST(SynthSpeechlike, Deterministic) {
  EXPECT_EQ(synth_speechlike(2.0, 5).samples, synth_speechlike(2.0, 5).samples);
  EXPECT_NE(synth_speechlike(2.0, 5).samples, synth_speechlike(2.0, 6).samples);
  EXPECT_EQ(synth_speechlike(1.5, 3).size(), 24000u);
}

TEST(SynthSpeechlike, SilenceFractionInRange) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = frame_powers(synth_speechlike(2.0, seed));
    const double peak = *std::max_element(p.begin(), p.end());
    const auto silent = std::count_if(p.begin(), p.end(), [&](double e) { return e < 1e-4 * peak; });
    const double fraction = static_cast<double>(silent) / static_cast<double>(p.size());
    EXPECT_GE(fraction, 0.2) << "seed " << seed;
    EXPECT_LE(fraction, 0.5) << "seed " << seed;
  }
}

TEST(SynthSpeechlike, EnergyBelowFourKilohertz) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto psd = average_periodogram(synth_speechlike(2.0, seed));
    // 62.5 Hz per bin, so bin 64 sits at 4 kHz.
    const double low = std::accumulate(psd.begin(), psd.begin() + 65, 0.0);
    const double total = std::accumulate(psd.begin(), psd.end(), 0.0);
    EXPECT_GE(low / total, 0.9) << "seed " << seed;
  }
}

TEST(SynthSpeechlike, ShortDurationRejected) {
  EXPECT_THROW(synth_speechlike(0.4, 1), InvalidConfig);
}

TEST(SynthNoise, WhiteIsFlat) {
  const auto psd = average_periodogram(synth_noise(NoiseKind::kWhite, 10.0, 3));
  const double mean = std::accumulate(psd.begin(), psd.end(), 0.0) / static_cast<double>(psd.size());
  for (std::size_t k = 0; k < psd.size(); ++k) {
    EXPECT_LE(std::abs(10.0 * std::log10(psd[k] / mean)), 1.5) << "bin " << k;
  }
}

TEST(SynthNoise, PinkFallsWithFrequency) {
  const auto psd = average_periodogram(synth_noise(NoiseKind::kPink, 10.0, 3));
  const double low = std::accumulate(psd.begin() + 2, psd.begin() + 8, 0.0) / 6.0;
  const double high = std::accumulate(psd.begin() + 96, psd.begin() + 128, 0.0) / 32.0;
  EXPECT_GT(10.0 * std::log10(low / high), 10.0);
}

TEST(SynthNoise, ModulatedVariesMoreThanWhite) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const double white = coefficient_of_variation(frame_powers(synth_noise(NoiseKind::kWhite, 5.0, seed)));
    const double mod =
        coefficient_of_variation(frame_powers(synth_noise(NoiseKind::kModulated, 5.0, seed)));
    EXPECT_GT(mod, white) << "seed " << seed;
  }
}

TEST(SynthNoise, DeterministicAndValidated) {
  for (auto kind : {NoiseKind::kWhite, NoiseKind::kPink, NoiseKind::kModulated}) {
    EXPECT_EQ(synth_noise(kind, 1.0, 8).samples, synth_noise(kind, 1.0, 8).samples);
  }
  EXPECT_THROW(synth_noise(NoiseKind::kWhite, 0.0, 1), InvalidConfig);
  EXPECT_THROW(parse_noise_kind("brown"), InvalidConfig);
  EXPECT_EQ(parse_noise_kind(noise_kind_name(NoiseKind::kModulated)), NoiseKind::kModulated);
}

TEST(MixAtSnr, ZeroAndTenDecibels) {
  const AudioBuffer clean = synth_speechlike(2.0, 1);
  const AudioBuffer noise = synth_noise(NoiseKind::kWhite, 2.0, 2);
  const Mixture m0 = mix_at_snr(clean, noise, 0.0);
  EXPECT_NEAR(mean_power(m0.scaled_noise) / mean_power(clean), 1.0, 1e-9);
  const Mixture m10 = mix_at_snr(clean, noise, 10.0);
  EXPECT_NEAR(mean_power(clean) / mean_power(m10.scaled_noise), 10.0, 1e-8);
}

TEST(MixAtSnr, RequestedSnrWithinHundredthDecibel) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double snr = -10.0 + static_cast<double>(seed);
    for (auto kind : {NoiseKind::kWhite, NoiseKind::kPink, NoiseKind::kModulated}) {
      const SyntheticUtterance u = make_utterance({snr, seed, 1.0, kind});
      const double measured = 10.0 * std::log10(mean_power(u.clean) / mean_power(u.noise));
      EXPECT_NEAR(measured, snr, 0.01);
    }
  }
}

TEST(MixAtSnr, WaveformAndSpectrumAdditivity) {
  const SyntheticUtterance u = make_utterance({3.0, 4, 1.0, NoiseKind::kPink});
  for (std::size_t i = 0; i < u.noisy.size(); ++i) {
    ASSERT_EQ(u.noisy.samples[i], u.clean.samples[i] + u.noise.samples[i]);
  }
  const StftConfig cfg;
  const Spectrogram y = stft(u.noisy, cfg), x = stft(u.clean, cfg), n = stft(u.noise, cfg);
  for (std::size_t i = 0; i < y.data.size(); ++i) {
    ASSERT_LE(std::abs(y.data.values()[i] - (x.data.values()[i] + n.data.values()[i])), 1e-9);
  }
}

TEST(MixAtSnr, NoiseLoopsToCleanLength) {
  const AudioBuffer clean = synth_speechlike(1.0, 1);
  const AudioBuffer noise = synth_noise(NoiseKind::kWhite, 0.3, 2);
  const Mixture m = mix_at_snr(clean, noise, 0.0);
  ASSERT_EQ(m.scaled_noise.size(), clean.size());
  const double ratio = m.scaled_noise.samples[0] / noise.samples[0];
  EXPECT_NEAR(m.scaled_noise.samples[noise.size()], ratio * noise.samples[0], 1e-12);
}

TEST(MixAtSnr, Errors) {
  const AudioBuffer noise = synth_noise(NoiseKind::kWhite, 1.0, 2);
  AudioBuffer silent;
  silent.samples.assign(16000, 0.0);
  EXPECT_THROW(mix_at_snr(silent, noise, 0.0), InvalidConfig);
  EXPECT_THROW(mix_at_snr(synth_speechlike(1.0, 1), AudioBuffer{}, 0.0), InvalidConfig);
  EXPECT_THROW(mix_at_snr(synth_speechlike(1.0, 1), noise, std::nan("")), InvalidConfig);
}

TEST(MixAtSnr, ActiveSpeechReference) {
  const AudioBuffer clean = synth_speechlike(2.0, 9);
  const AudioBuffer noise = synth_noise(NoiseKind::kWhite, 2.0, 10);
  const double active = reference_power(clean, SnrReference::kActiveSpeech);
  EXPECT_GT(active, mean_power(clean));
  const Mixture m = mix_at_snr(clean, noise, 5.0, SnrReference::kActiveSpeech);
  EXPECT_NEAR(10.0 * std::log10(active / mean_power(m.scaled_noise)), 5.0, 1e-9);
}

TEST(TrainingPairs, TargetZeroWhereCleanIsSilent) {
  const SyntheticUtterance u = make_utterance({0.0, 11, 2.0, NoiseKind::kWhite});
  const StftConfig cfg;
  const PairRecord r = make_training_pairs(u.clean, u.noise, 0.0, cfg, {-6.0, 4.0}, 11);
  const Spectrogram x = stft(u.clean, cfg);
  std::size_t silent_frames = 0;
  for (std::size_t l = 0; l < x.frames(); ++l) {
    bool silent = true;
    for (std::size_t k = 0; k < x.bins() && silent; ++k) silent = std::norm(x.data(k, l)) == 0.0;
    if (!silent) continue;
    ++silent_frames;
    for (std::size_t k = 0; k < x.bins(); ++k) EXPECT_EQ(r.target.values()(k, l), 0.0);
  }
  EXPECT_GT(silent_frames, 5u);

  const Spectrogram n = stft(u.noise, cfg);
  const Spectrogram zero{ComplexGrid(n.bins(), n.frames()), n.config};
  const SppMap none = target_map(zero, n, n);
  for (double v : none.values().values()) EXPECT_EQ(v, 0.0);
}

TEST(TrainingPairs, ShapesRangeAndNormalisation) {
  const SyntheticUtterance u = make_utterance({-5.0, 12, 1.0, NoiseKind::kModulated});
  const PairRecord r = make_training_pairs(u.clean, u.noise, -5.0, StftConfig{}, {-6.0, 4.0}, 12);
  EXPECT_EQ(r.features.values.bins(), 129u);
  EXPECT_TRUE(r.features.values.same_shape(r.target.values()));
  ASSERT_TRUE(r.features.normalization.has_value());
  EXPECT_EQ(*r.features.normalization, (NormStats{-6.0, 4.0}));
  for (double v : r.target.values().values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_EQ(r.seed, 12u);
  EXPECT_EQ(r.snr_db, -5.0);
}

TEST(PairFile, RoundTripIsBitwise) {
  const SyntheticUtterance u = make_utterance({2.0, 13, 1.0, NoiseKind::kWhite});
  const PairRecord r = make_training_pairs(u.clean, u.noise, 2.0, StftConfig{}, {-5.5, 3.5}, 13);
  const std::string bytes = encode_pair(r);
  EXPECT_EQ(bytes.substr(0, 4), "SPPD");
  const PairRecord back = decode_pair(bytes);
  // Blocks are stored as f32.
  auto as_f32 = [](RealGrid g) {
    for (double& v : g.values()) v = static_cast<float>(v);
    return g;
  };
  EXPECT_EQ(back.features.values, as_f32(r.features.values));
  EXPECT_EQ(back.target.values(), as_f32(r.target.values()));
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(back.snr_db, r.snr_db);
  EXPECT_EQ(back.features.normalization, r.features.normalization);
  EXPECT_EQ(encode_pair(back), bytes);

  const auto path = std::filesystem::temp_directory_path() / "sppkit_datagen_test.sppd";
  write_pair_file(path, r);
  EXPECT_EQ(encode_pair(read_pair_file(path)), bytes);
  std::filesystem::remove(path);
}

TEST(PairFile, CorruptInputs) {
  const SyntheticUtterance u = make_utterance({2.0, 14, 1.0, NoiseKind::kWhite});
  const PairRecord r = make_training_pairs(u.clean, u.noise, 2.0, StftConfig{}, {-5.5, 3.5}, 14);
  const std::string bytes = encode_pair(r);
  std::string bad = bytes;
  bad[0] = 'Q';
  EXPECT_THROW(decode_pair(bad), FormatError);
  EXPECT_THROW(decode_pair(bytes.substr(0, bytes.size() - 9)), TruncatedError);
  EXPECT_THROW(decode_pair(bytes + "zz"), ValidationError);

  PairRecord raw = r;
  raw.features.normalization.reset();
  EXPECT_THROW(encode_pair(raw), InvalidConfig);
}

TEST(DeriveSeed, StableAndSpread) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
}

}  // namespace
}  // namespace sppkit
