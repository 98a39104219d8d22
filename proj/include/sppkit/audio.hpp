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

namespace sppkit {

inline constexpr int kSampleRate = 16000;

/// Mono audio, amplitude nominally in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = kSampleRate;

  std::size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

/// Throws InvalidConfig unless the buffer is 16 kHz with finite samples.
void validate_pipeline_input(const AudioBuffer& audio);

double mean_power(const AudioBuffer& audio);
double rms(const AudioBuffer& audio);

}  // namespace sppkit
