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

#include "sppkit/nn/golden.hpp"

#include <cmath>
#include <random>

#include "sppkit/datagen.hpp"
#include "sppkit/dump_io.hpp"
#include "sppkit/nn/bundle_io.hpp"
#include "sppkit/nn/reference.hpp"
#include "sppkit/stft.hpp"

namespace sppkit::nn {

ModelBundle random_bundle(const ModelDescriptor& descriptor, std::uint64_t seed, double scale,
                          NormStats stats) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  ModelBundle bundle;
  bundle.descriptor = descriptor;
  bundle.norm_stats = stats;
  // Biases take the fan-in of the weight matrix preceding them in the
  // inventory.
  std::size_t last_fan_in = 1;
  for (const auto& spec : descriptor.inventory()) {
    Tensor t(spec.shape);
    const bool is_norm = spec.name.starts_with("norm.");
    if (spec.shape.size() == 2) last_fan_in = spec.shape[1];
    const double bound = scale / std::sqrt(static_cast<double>(last_fan_in));
    for (float& v : t.data()) {
      if (is_norm) {
        v = static_cast<float>((spec.name == "norm.weight" ? 1.0 : 0.0) + 0.1 * unit(rng));
      } else {
        v = static_cast<float>(bound * unit(rng));
      }
    }
    bundle.tensors.emplace(spec.name, std::move(t));
  }
  bundle.validate();
  return bundle;
}

GoldenFixture make_golden(ModelVariant variant, std::uint64_t seed, double duration_s) {
  const ModelDescriptor desc =
      variant == ModelVariant::kBlstm ? ModelDescriptor::blstm() : ModelDescriptor::attention();
  GoldenFixture fixture;

  MixSpec mix;
  mix.seed = derive_seed(seed, 11);
  mix.duration_s = std::max(duration_s, 0.5);
  mix.snr_db = 5.0;
  const SyntheticUtterance utt = make_utterance(mix);
  AudioBuffer noisy = utt.noisy;
  noisy.samples.resize(static_cast<std::size_t>(duration_s * kSampleRate));
  LogPowerFeatures raw = log_power(stft(noisy));
  NormStatsAccumulator acc;
  acc.add(raw);
  NormStats stats = acc.finish();
  // Quantise to f32 so the statistics survive any f32 round trip unchanged.
  stats.mean = static_cast<float>(stats.mean);
  stats.std = static_cast<float>(stats.std);

  fixture.bundle = random_bundle(desc, derive_seed(seed, 12), 1.0, stats);
  fixture.input = normalize(raw, stats);
  for (double& v : fixture.input.values.values()) v = static_cast<float>(v);
  fixture.expected = reference::forward(fixture.bundle, fixture.input.values);
  return fixture;
}

void write_golden(const std::filesystem::path& dir, const std::string& stem,
                  const GoldenFixture& fixture) {
  std::filesystem::create_directories(dir);
  save_model(fixture.bundle, dir / (stem + ".sppm"));
  write_dump(dir / (stem + ".input.sppf"), DumpKind::kFeatures, fixture.input.values);
  write_dump(dir / (stem + ".expected.sppp"), DumpKind::kSpp, fixture.expected);
}

GoldenFixture read_golden(const std::filesystem::path& dir, const std::string& stem) {
  GoldenFixture fixture;
  fixture.bundle = load_model(dir / (stem + ".sppm"));
  fixture.input = LogPowerFeatures{read_dump(dir / (stem + ".input.sppf"), DumpKind::kFeatures),
                                   fixture.bundle.norm_stats};
  fixture.expected = read_dump(dir / (stem + ".expected.sppp"), DumpKind::kSpp);
  return fixture;
}

}  // namespace sppkit::nn
