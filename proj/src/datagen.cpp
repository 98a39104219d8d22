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

#include "sppkit/datagen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "binary_io.hpp"
#include "sppkit/dump_io.hpp"
#include "sppkit/errors.hpp"

namespace sppkit {
namespace {

constexpr double kNoiseRms = 0.1;
constexpr std::uint32_t kPairVersion = 1;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t samples_for(double duration_s) {
  return static_cast<std::size_t>(std::llround(duration_s * kSampleRate));
}

void scale_to_rms(std::vector<double>& x, double target) {
  double p = 0.0;
  for (double v : x) p += v * v;
  if (p <= 0.0) return;
  const double g = target / std::sqrt(p / static_cast<double>(x.size()));
  for (double& v : x) v *= g;
}

// Raised-cosine attack and release of `ramp` samples.
double syllable_envelope(std::size_t n, std::size_t len, std::size_t ramp) {
  if (n < ramp) return 0.5 - 0.5 * std::cos(std::numbers::pi * n / ramp);
  if (n >= len - ramp) return 0.5 - 0.5 * std::cos(std::numbers::pi * (len - n) / ramp);
  return 1.0;
}

}  // namespace

std::string_view noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kWhite: return "white";
    case NoiseKind::kPink: return "pink";
    case NoiseKind::kModulated: return "modulated";
  }
  return "unknown";
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "white") return NoiseKind::kWhite;
  if (name == "pink") return NoiseKind::kPink;
  if (name == "modulated") return NoiseKind::kModulated;
  throw InvalidConfig("unknown noise kind '" + std::string(name) + "'");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

AudioBuffer synth_speechlike(double duration_s, std::uint64_t seed) {
  if (!(duration_s >= 0.5)) throw InvalidConfig("speech-like signal needs at least 0.5 s");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  const std::size_t total = samples_for(duration_s);
  const double silence_fraction = uniform(0.25, 0.38);
  const double voiced_s = (1.0 - silence_fraction) * duration_s;
  const double silence_s = silence_fraction * duration_s;

  std::vector<double> syllables;
  double acc = 0.0;
  while (acc < voiced_s) {
    syllables.push_back(uniform(0.12, 0.30));
    acc += syllables.back();
  }
  for (double& s : syllables) s *= voiced_s / acc;

  const double lead_s = std::min(0.15, 0.5 * silence_s);
  std::vector<double> gaps(syllables.size());
  double weight_sum = 0.0;
  for (double& g : gaps) weight_sum += (g = -std::log(1.0 - unit(rng)) + 0.2);
  for (double& g : gaps) g *= (silence_s - lead_s) / weight_sum;

  AudioBuffer out;
  out.samples.assign(total, 0.0);
  double cursor_s = lead_s;
  for (std::size_t i = 0; i < syllables.size(); ++i) {
    const std::size_t start = samples_for(cursor_s);
    const std::size_t len = std::min(samples_for(syllables[i]), total - std::min(total, start));
    cursor_s += syllables[i] + gaps[i];
    if (len < 64) continue;

    const double f0_start = uniform(100.0, 300.0);
    const double f0_end = f0_start * uniform(0.85, 1.15);
    const int harmonics = 5 + static_cast<int>(unit(rng) * 6.0);
    const double level = uniform(0.3, 1.0);
    std::vector<double> amp(harmonics), phase(harmonics);
    for (int h = 0; h < harmonics; ++h) {
      amp[h] = uniform(0.5, 1.0) / (h + 1);
      phase[h] = uniform(0.0, kTwoPi);
    }
    const std::size_t ramp = std::min<std::size_t>(len / 4, 400);
    double theta = 0.0;  // integrated fundamental phase
    for (std::size_t n = 0; n < len; ++n) {
      const double frac = static_cast<double>(n) / static_cast<double>(len);
      theta += kTwoPi * (f0_start + (f0_end - f0_start) * frac) / kSampleRate;
      double s = 0.0;
      for (int h = 0; h < harmonics; ++h) s += amp[h] * std::sin((h + 1) * theta + phase[h]);
      out.samples[start + n] = level * syllable_envelope(n, len, ramp) * s;
    }
  }

  double peak = 0.0;
  for (double v : out.samples) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    for (double& v : out.samples) v *= 0.5 / peak;
  }
  return out;
}

AudioBuffer synth_noise(NoiseKind kind, double duration_s, std::uint64_t seed) {
  if (!(duration_s > 0.0)) throw InvalidConfig("noise duration must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t n = samples_for(duration_s);
  AudioBuffer out;
  out.samples.resize(n);
  for (double& v : out.samples) v = gauss(rng);

  switch (kind) {
    case NoiseKind::kWhite:
      break;
    case NoiseKind::kPink: {
      // Paul Kellet's refined pinking filter (approx. -3 dB/octave).
      std::array<double, 7> b{};
      for (double& v : out.samples) {
        const double w = v;
        b[0] = 0.99886 * b[0] + w * 0.0555179;
        b[1] = 0.99332 * b[1] + w * 0.0750759;
        b[2] = 0.96900 * b[2] + w * 0.1538520;
        b[3] = 0.86650 * b[3] + w * 0.3104856;
        b[4] = 0.55000 * b[4] + w * 0.5329522;
        b[5] = -0.7616 * b[5] - w * 0.0168980;
        v = b[0] + b[1] + b[2] + b[3] + b[4] + b[5] + b[6] + w * 0.5362;
        b[6] = w * 0.115926;
      }
      break;
    }
    case NoiseKind::kModulated: {
      std::uniform_real_distribution<double> rate(1.0, 4.0), phase(0.0, kTwoPi);
      const double f1 = rate(rng), f2 = rate(rng);
      const double p1 = phase(rng), p2 = phase(rng);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / kSampleRate;
        const double env =
            std::exp(0.8 * (std::sin(kTwoPi * f1 * t + p1) + 0.5 * std::sin(kTwoPi * f2 * t + p2)));
        out.samples[i] *= env;
      }
      break;
    }
  }
  scale_to_rms(out.samples, kNoiseRms);
  return out;
}

double reference_power(const AudioBuffer& clean, SnrReference reference) {
  if (reference == SnrReference::kFullUtterance) return mean_power(clean);
  constexpr std::size_t kFrame = 256;
  std::vector<double> energy;
  for (std::size_t start = 0; start < clean.size(); start += kFrame) {
    const std::size_t end = std::min(clean.size(), start + kFrame);
    double e = 0.0;
    for (std::size_t i = start; i < end; ++i) e += clean.samples[i] * clean.samples[i];
    energy.push_back(e / static_cast<double>(end - start));
  }
  const double peak = energy.empty() ? 0.0 : *std::max_element(energy.begin(), energy.end());
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t f = 0; f < energy.size(); ++f) {
    if (peak > 0.0 && energy[f] >= peak * 1e-4) {
      const std::size_t len = std::min(clean.size(), (f + 1) * kFrame) - f * kFrame;
      sum += energy[f] * static_cast<double>(len);
      count += len;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

Mixture mix_at_snr(const AudioBuffer& clean, const AudioBuffer& noise, double snr_db,
                   SnrReference reference) {
  if (!std::isfinite(snr_db)) throw InvalidConfig("SNR must be finite");
  const double clean_power = reference_power(clean, reference);
  if (!(clean_power > 0.0)) throw InvalidConfig("clean signal is silent; SNR undefined");
  if (noise.samples.empty()) throw InvalidConfig("noise signal is empty");

  Mixture mix;
  mix.scaled_noise.sample_rate = clean.sample_rate;
  mix.scaled_noise.samples.resize(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    mix.scaled_noise.samples[i] = noise.samples[i % noise.size()];
  }
  const double noise_power = mean_power(mix.scaled_noise);
  if (!(noise_power > 0.0)) throw InvalidConfig("noise signal is silent");
  const double gain = std::sqrt(clean_power / (noise_power * std::pow(10.0, snr_db / 10.0)));
  for (double& v : mix.scaled_noise.samples) v *= gain;

  mix.noisy.sample_rate = clean.sample_rate;
  mix.noisy.samples.resize(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    mix.noisy.samples[i] = clean.samples[i] + mix.scaled_noise.samples[i];
  }
  return mix;
}

void MixSpec::validate() const {
  if (!(duration_s > 0.0)) throw InvalidConfig("duration must be positive");
  if (!std::isfinite(snr_db)) throw InvalidConfig("SNR must be finite");
}

SyntheticUtterance make_utterance(const MixSpec& spec) {
  spec.validate();
  SyntheticUtterance u;
  u.clean = synth_speechlike(spec.duration_s, derive_seed(spec.seed, 1));
  const AudioBuffer noise = synth_noise(spec.noise_kind, spec.duration_s, derive_seed(spec.seed, 2));
  Mixture mix = mix_at_snr(u.clean, noise, spec.snr_db, spec.snr_reference);
  u.noise = std::move(mix.scaled_noise);
  u.noisy = std::move(mix.noisy);
  return u;
}

PairRecord make_training_pairs(const AudioBuffer& clean, const AudioBuffer& noise,
                               double snr_db, const StftConfig& config,
                               const NormStats& stats, std::uint64_t seed,
                               SnrReference reference) {
  const Mixture mix = mix_at_snr(clean, noise, snr_db, reference);
  const Spectrogram clean_spec = stft(clean, config);
  const Spectrogram noise_spec = stft(mix.scaled_noise, config);
  const Spectrogram noisy_spec = stft(mix.noisy, config);
  return PairRecord{normalize(log_power(noisy_spec), stats),
                    target_map(clean_spec, noise_spec, noisy_spec), seed, snr_db};
}

std::string encode_pair(const PairRecord& record) {
  if (!record.features.normalization) {
    throw InvalidConfig("pair features must be normalised before export");
  }
  detail::ByteWriter out;
  out.bytes("SPPD");
  out.u32(kPairVersion);
  out.u64(record.seed);
  out.f64(record.snr_db);
  out.f64(record.features.normalization->mean);
  out.f64(record.features.normalization->std);
  std::string bytes = out.data();
  bytes += encode_dump(DumpKind::kFeatures, record.features.values);
  bytes += encode_dump(DumpKind::kSpp, record.target.values());
  return bytes;
}

PairRecord decode_pair(std::string_view bytes) {
  detail::ByteReader in(bytes, "pair file");
  const auto magic = in.bytes(4, "magic");
  if (magic != "SPPD") throw FormatError("not a pair file: bad magic '" + std::string(magic) + "'");
  const std::uint32_t version = in.u32("version");
  if (version != kPairVersion) {
    throw FormatError("unsupported pair file version " + std::to_string(version));
  }
  PairRecord record;
  record.seed = in.u64("seed");
  record.snr_db = in.f64("snr");
  NormStats stats;
  stats.mean = in.f64("normalisation mean");
  stats.std = in.f64("normalisation std");
  std::size_t used = 0;
  auto rest = bytes.substr(in.position());
  record.features = LogPowerFeatures{decode_dump(rest, DumpKind::kFeatures, &used), stats};
  rest = rest.substr(used);
  record.target = SppMap(decode_dump(rest, DumpKind::kSpp, &used));
  if (!record.target.values().same_shape(record.features.values)) {
    throw ValidationError("pair file features and target differ in shape");
  }
  if (used != rest.size()) throw ValidationError("pair file has trailing bytes");
  return record;
}

void write_pair_file(const std::filesystem::path& path, const PairRecord& record) {
  detail::write_file(path, encode_pair(record));
}

PairRecord read_pair_file(const std::filesystem::path& path) {
  return decode_pair(detail::read_file(path));
}

}  // namespace sppkit
