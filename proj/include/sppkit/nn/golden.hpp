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

#include "sppkit/features.hpp"
#include "sppkit/grid.hpp"
#include "sppkit/nn/model.hpp"

namespace sppkit::nn {

/// Bundle with uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights scaled by
/// `scale`, layer-norm gains near one and the given statistics.
ModelBundle random_bundle(const ModelDescriptor& descriptor, std::uint64_t seed,
                          double scale = 1.0, NormStats stats = {-6.0, 4.0});

/// Network input, bundle and the output expected from the naive reference.
struct GoldenFixture {
  ModelBundle bundle;
  LogPowerFeatures input;  ///< normalised with bundle.norm_stats
  RealGrid expected;
};

/// Deterministic fixture: random bundle, features of a short synthetic
/// noisy utterance, expected output from reference::forward.
GoldenFixture make_golden(ModelVariant variant, std::uint64_t seed, double duration_s = 0.4);

/// Writes <stem>.sppm, <stem>.input.sppf and <stem>.expected.sppp.
void write_golden(const std::filesystem::path& dir, const std::string& stem,
                  const GoldenFixture& fixture);
GoldenFixture read_golden(const std::filesystem::path& dir, const std::string& stem);

}  // namespace sppkit::nn
