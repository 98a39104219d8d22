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
#include <vector>

#include "sppkit/audio.hpp"
#include "sppkit/grid.hpp"

namespace sppkit {

enum class WindowKind { kPeriodicHamming };

/// Frame layout of the analysis. Defaults: 16 ms window, 8 ms hop at 16 kHz.
struct StftConfig {
  std::size_t window_len = 256;
  std::size_t hop = 128;
  std::size_t fft_size = 256;
  WindowKind window_kind = WindowKind::kPeriodicHamming;

  std::size_t num_bins() const { return fft_size / 2 + 1; }
  /// Throws InvalidConfig when hop != window_len / 2 or fft_size != window_len.
  void validate() const;

  friend bool operator==(const StftConfig&, const StftConfig&) = default;
};

/// K x L complex STFT coefficients Y(k, l).
struct Spectrogram {
  ComplexGrid data;
  StftConfig config;

  std::size_t bins() const { return data.bins(); }
  std::size_t frames() const { return data.frames(); }
};

/// Periodic Hamming window: w[n] = 0.54 - 0.46 cos(2 pi n / len).
std::vector<double> hamming_window(std::size_t len);

/// Number of full frames for `num_samples` samples; no padding at either end.
std::size_t frame_count(std::size_t num_samples, const StftConfig& config);

/// Frame l covers samples [l * hop, l * hop + window_len).
Spectrogram stft(const AudioBuffer& audio, const StftConfig& config = {});

/// Weighted overlap-add with the analysis window as synthesis window,
/// normalised by the summed squared-window envelope. The output has
/// (L - 1) * hop + window_len samples.
AudioBuffer istft(const Spectrogram& spec);

/// |Y(k, l)|^2 for every bin.
PowerGrid periodogram(const Spectrogram& spec);

}  // namespace sppkit
