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

#include "sppkit/audio.hpp"

#include <cmath>
#include <string>

#include "sppkit/errors.hpp"

namespace sppkit {

void validate_pipeline_input(const AudioBuffer& audio) {
  if (audio.sample_rate != kSampleRate) {
    throw InvalidConfig("sample rate must be 16000 Hz, got " +
                        std::to_string(audio.sample_rate));
  }
  for (double s : audio.samples) {
    if (!std::isfinite(s)) throw InvalidConfig("audio contains non-finite samples");
  }
}

double mean_power(const AudioBuffer& audio) {
  if (audio.samples.empty()) return 0.0;
  double acc = 0.0;
  for (double s : audio.samples) acc += s * s;
  return acc / static_cast<double>(audio.samples.size());
}

double rms(const AudioBuffer& audio) { return std::sqrt(mean_power(audio)); }

}  // namespace sppkit
