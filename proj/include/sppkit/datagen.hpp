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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "sppkit/audio.hpp"
#include "sppkit/features.hpp"
#include "sppkit/spp.hpp"
#include "sppkit/stft.hpp"

namespace sppkit {

enum class NoiseKind { kWhite, kPink, kModulated };

std::string_view noise_kind_name(NoiseKind kind);
/// Throws InvalidConfig for unknown names.
NoiseKind parse_noise_kind(std::string_view name);

/// Derives an independent child seed for sub-stream `stream` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Speech-like test signal: syllables of harmonic tone complexes (f0 drawn
/// from 100-300 Hz with a glide, 5-10 harmonics) separated by silences that
/// cover roughly a quarter to two fifths of the duration. Starts with at
/// least 0.1 s of silence. Deterministic per seed.
AudioBuffer synth_speechlike(double duration_s, std::uint64_t seed);

/// white: i.i.d. Gaussian; pink: 1/f shaped; modulated: white noise under a
/// random 1-4 Hz amplitude envelope. Unit-free, RMS 0.1.
AudioBuffer synth_noise(NoiseKind kind, double duration_s, std::uint64_t seed);

struct Mixture {
  AudioBuffer noisy;
  AudioBuffer scaled_noise;
};

/// Scales `noise` (looped or truncated to the clean length) so that the
/// full-utterance clean-to-noise power ratio equals snr_db, then adds it.
/// Which clean samples the SNR is measured over. kActiveSpeech keeps 256-sample
/// frames within 40 dB of the loudest clean frame.
enum class SnrReference { kFullUtterance, kActiveSpeech };

/// Power of the clean signal under `reference`.
double reference_power(const AudioBuffer& clean, SnrReference reference);

Mixture mix_at_snr(const AudioBuffer& clean, const AudioBuffer& noise, double snr_db,
                   SnrReference reference = SnrReference::kFullUtterance);

/// Full description of one synthetic utterance.
struct MixSpec {
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  double duration_s = 2.0;
  NoiseKind noise_kind = NoiseKind::kWhite;
  SnrReference snr_reference = SnrReference::kFullUtterance;

  void validate() const;
};

struct SyntheticUtterance {
  AudioBuffer clean;
  AudioBuffer noise;  ///< scaled, so noisy == clean + noise
  AudioBuffer noisy;
};

SyntheticUtterance make_utterance(const MixSpec& spec);

/// One training example: normalised log-power input and learning target.
struct PairRecord {
  LogPowerFeatures features;
  SppMap target;
  std::uint64_t seed = 0;
  double snr_db = 0.0;
};

/// Builds the log-power features of clean + noise at snr_db, normalised
/// with `stats`, and the per-bin learning-target SPP.
PairRecord make_training_pairs(const AudioBuffer& clean, const AudioBuffer& noise,
                               double snr_db, const StftConfig& config,
                               const NormStats& stats, std::uint64_t seed = 0,
                               SnrReference reference = SnrReference::kFullUtterance);

/// "SPPD" | u32 version | u64 seed | f64 snr_db | f64 norm mean |
/// f64 norm std | SPPF dump | SPPP dump
std::string encode_pair(const PairRecord& record);
PairRecord decode_pair(std::string_view bytes);
void write_pair_file(const std::filesystem::path& path, const PairRecord& record);
PairRecord read_pair_file(const std::filesystem::path& path);

}  // namespace sppkit
