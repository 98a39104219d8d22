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

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "sppkit/audio.hpp"
#include "sppkit/grid.hpp"
#include "sppkit/lsa.hpp"
#include "sppkit/nn/model.hpp"
#include "sppkit/noise_tracker.hpp"
#include "sppkit/spp.hpp"
#include "sppkit/stft.hpp"

namespace sppkit {

enum class SppSource { kStatistical, kNeural };

std::string_view spp_source_name(SppSource source);
/// Accepts "stat"/"statistical" and "nn"/"neural".
SppSource parse_spp_source(std::string_view name);
std::string_view tracker_name(TrackerKind kind);
/// Accepts "subopt"/"suboptimal" and "opt"/"optimal".
TrackerKind parse_tracker(std::string_view name);

/// Produces the SPP map of a whole noisy utterance.
class SppProvider {
 public:
  virtual ~SppProvider() = default;
  virtual SppMap estimate(const Spectrogram& noisy) = 0;
};

/// Fixed-prior a posteriori SPP with recursive smoothing and the stagnation
/// cap. The noise PSD of the previous frame comes from an internal optimal
/// tracker, initialised from the leading frames or from `seed_psd`.
class StatisticalSpp : public SppProvider {
 public:
  explicit StatisticalSpp(FixedPriorParams params = {}, NoiseTrackerConfig tracker = {},
                          std::optional<std::vector<double>> seed_psd = std::nullopt);
  SppMap estimate(const Spectrogram& noisy) override;

 private:
  FixedPriorParams params_;
  NoiseTrackerConfig tracker_;
  std::optional<std::vector<double>> seed_psd_;
};

/// Runs a trained network on normalised log-power features.
class NeuralSpp : public SppProvider {
 public:
  /// Validates the bundle; throws ValidationError on any defect.
  explicit NeuralSpp(std::shared_ptr<const nn::ModelBundle> bundle);
  SppMap estimate(const Spectrogram& noisy) override;

 private:
  std::shared_ptr<const nn::ModelBundle> bundle_;
};

/// Returns a precomputed map, e.g. an oracle target.
class FixedSpp : public SppProvider {
 public:
  explicit FixedSpp(SppMap map) : map_(std::move(map)) {}
  SppMap estimate(const Spectrogram& noisy) override;

 private:
  SppMap map_;
};

struct EnhanceConfig {
  double alpha_snr = 0.90;
  double xi_floor_db = kXiFloorDb;
  double gain_floor = 0.0;
  SppSource spp_source = SppSource::kStatistical;
  TrackerKind tracker = TrackerKind::kSuboptimal;
  DdMode dd_mode = DdMode::kAsPrinted;
  FixedPriorParams prior;
  NoiseTrackerConfig tracker_config;
  StftConfig stft;

  void validate() const;
};

struct EnhanceResult {
  AudioBuffer audio;
  SppMap spp;
  PowerGrid noise_psd;
  RealGrid gain;
};

/// Noise PSD track for a periodogram and an SPP map of the same shape.
/// A seed PSD skips the initialisation frames.
PowerGrid track_noise(const PowerGrid& y_pow, const SppMap& spp, TrackerKind kind,
                      const NoiseTrackerConfig& config = {},
                      std::optional<std::vector<double>> seed_psd = std::nullopt);

/// Builds the provider selected by config.spp_source. Neural requires a
/// model whose bin count matches the STFT; the check happens here.
std::unique_ptr<SppProvider> make_spp_provider(const EnhanceConfig& config,
                                               std::shared_ptr<const nn::ModelBundle> model);

/// SPP, noise tracking, decision-directed a priori SNR and LSA gain per frame,
/// then resynthesis. The input is zero padded to whole frames and the output
/// trimmed back to the input length.
EnhanceResult enhance(const AudioBuffer& noisy, const EnhanceConfig& config,
                      SppProvider& provider);
EnhanceResult enhance(const AudioBuffer& noisy, const EnhanceConfig& config,
                      std::shared_ptr<const nn::ModelBundle> model = nullptr);

}  // namespace sppkit
