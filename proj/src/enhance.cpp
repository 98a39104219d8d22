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

#include "sppkit/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sppkit/errors.hpp"
#include "sppkit/features.hpp"

namespace sppkit {

std::string_view spp_source_name(SppSource source) {
  return source == SppSource::kNeural ? "nn" : "stat";
}

SppSource parse_spp_source(std::string_view name) {
  if (name == "stat" || name == "statistical") return SppSource::kStatistical;
  if (name == "nn" || name == "neural") return SppSource::kNeural;
  throw InvalidConfig("unknown SPP source '" + std::string(name) + "'");
}

std::string_view tracker_name(TrackerKind kind) {
  return kind == TrackerKind::kOptimal ? "opt" : "subopt";
}

TrackerKind parse_tracker(std::string_view name) {
  if (name == "subopt" || name == "suboptimal") return TrackerKind::kSuboptimal;
  if (name == "opt" || name == "optimal") return TrackerKind::kOptimal;
  throw InvalidConfig("unknown noise tracker '" + std::string(name) + "'");
}

StatisticalSpp::StatisticalSpp(FixedPriorParams params, NoiseTrackerConfig tracker,
                               std::optional<std::vector<double>> seed_psd)
    : params_(params), tracker_(tracker), seed_psd_(std::move(seed_psd)) {
  params_.validate();
  tracker_.validate();
}

SppMap StatisticalSpp::estimate(const Spectrogram& noisy) {
  const PowerGrid y_pow = periodogram(noisy);
  const std::size_t bins = y_pow.bins();
  NoiseTrackerState tracker(bins, tracker_);
  if (seed_psd_) tracker.seed(*seed_psd_);
  SppSmootherState smoother(bins);
  RealGrid out(bins, y_pow.frames());
  std::vector<double> p_raw(bins);
  for (std::size_t l = 0; l < y_pow.frames(); ++l) {
    const std::vector<double> y = y_pow.column(l);
    // Warm-up frames score against the running mean that includes them.
    const bool warmup = !tracker.initialized();
    if (warmup) {
      init_noise_psd(tracker, y);
      for (double& v : tracker.phi_n_hat) v = std::max(v, tracker_.floor);
    }
    for (std::size_t k = 0; k < bins; ++k) {
      p_raw[k] = posterior_spp_fixed_prior(y[k], tracker.phi_n_hat[k], params_);
    }
    const std::vector<double> p = smooth_and_clamp(p_raw, smoother, params_);
    out.set_column(l, p);
    if (!warmup) optimal_mmse_step(tracker, p, y);
  }
  return SppMap(std::move(out));
}

NeuralSpp::NeuralSpp(std::shared_ptr<const nn::ModelBundle> bundle) : bundle_(std::move(bundle)) {
  if (!bundle_) throw InvalidConfig("neural SPP requires a model");
  bundle_->validate();
}

SppMap NeuralSpp::estimate(const Spectrogram& noisy) {
  if (noisy.bins() != bundle_->descriptor.num_bins) {
    throw ShapeMismatch("model expects " + std::to_string(bundle_->descriptor.num_bins) +
                        " bins, spectrogram has " + std::to_string(noisy.bins()));
  }
  return nn::model_forward(*bundle_, normalize(log_power(noisy), bundle_->norm_stats));
}

SppMap FixedSpp::estimate(const Spectrogram& noisy) {
  if (noisy.bins() != map_.bins() || noisy.frames() != map_.frames()) {
    throw ShapeMismatch("fixed SPP map does not match the spectrogram shape");
  }
  return map_;
}

void EnhanceConfig::validate() const {
  if (!(alpha_snr >= 0.0 && alpha_snr < 1.0)) throw InvalidConfig("alpha_snr must lie in [0, 1)");
  if (!std::isfinite(xi_floor_db)) throw InvalidConfig("xi_floor_db must be finite");
  if (!(gain_floor >= 0.0 && gain_floor <= 1.0)) {
    throw InvalidConfig("gain_floor must lie in [0, 1]");
  }
  prior.validate();
  tracker_config.validate();
  stft.validate();
}

PowerGrid track_noise(const PowerGrid& y_pow, const SppMap& spp, TrackerKind kind,
                      const NoiseTrackerConfig& config,
                      std::optional<std::vector<double>> seed_psd) {
  if (!y_pow.same_shape(spp.values())) {
    throw ShapeMismatch("periodogram and SPP map differ in shape");
  }
  NoiseTrackerState state(y_pow.bins(), config);
  if (seed_psd) state.seed(*seed_psd);
  PowerGrid out(y_pow.bins(), y_pow.frames());
  for (std::size_t l = 0; l < y_pow.frames(); ++l) {
    const std::vector<double> y = y_pow.column(l);
    const std::vector<double> p = spp.values().column(l);
    out.set_column(l, track_noise_frame(state, kind, p, y));
  }
  return out;
}

std::unique_ptr<SppProvider> make_spp_provider(const EnhanceConfig& config,
                                               std::shared_ptr<const nn::ModelBundle> model) {
  if (config.spp_source == SppSource::kStatistical) {
    return std::make_unique<StatisticalSpp>(config.prior, config.tracker_config);
  }
  if (!model) throw InvalidConfig("neural SPP source requires a model");
  if (model->descriptor.num_bins != config.stft.num_bins()) {
    throw ValidationError("model expects " + std::to_string(model->descriptor.num_bins) +
                          " bins, STFT produces " + std::to_string(config.stft.num_bins()));
  }
  return std::make_unique<NeuralSpp>(std::move(model));
}

EnhanceResult enhance(const AudioBuffer& noisy, const EnhanceConfig& config,
                      SppProvider& provider) {
  config.validate();
  validate_pipeline_input(noisy);
  const StftConfig& sc = config.stft;

  AudioBuffer padded = noisy;
  std::size_t frames = 1;
  if (noisy.size() > sc.window_len) {
    frames = (noisy.size() - sc.window_len + sc.hop - 1) / sc.hop + 1;
  }
  padded.samples.resize((frames - 1) * sc.hop + sc.window_len, 0.0);

  Spectrogram spec = stft(padded, sc);
  const PowerGrid y_pow = periodogram(spec);
  SppMap spp = provider.estimate(spec);
  if (!spp.values().same_shape(y_pow)) {
    throw ShapeMismatch("SPP provider returned a map of the wrong shape");
  }

  const std::size_t bins = y_pow.bins();
  NoiseTrackerState tracker(bins, config.tracker_config);
  DdState dd(bins);
  const double xi_floor = db_to_power(config.xi_floor_db);
  PowerGrid noise(bins, frames);
  RealGrid gain(bins, frames);
  std::vector<double> gamma(bins), g(bins);

  for (std::size_t l = 0; l < frames; ++l) {
    const std::vector<double> y = y_pow.column(l);
    const std::vector<double> p = spp.values().column(l);
    const std::span<const double> phi = track_noise_frame(tracker, config.tracker, p, y);
    for (std::size_t k = 0; k < bins; ++k) gamma[k] = aposteriori_snr(y[k], phi[k]);
    const std::vector<double> xi =
        dd_apriori_snr(dd, gamma, config.alpha_snr, xi_floor, config.dd_mode);
    for (std::size_t k = 0; k < bins; ++k) {
      g[k] = lsa_gain(xi[k], gamma[k], config.gain_floor);
      spec.data(k, l) *= g[k];
    }
    noise.set_column(l, phi);
    gain.set_column(l, g);
    dd.commit(y, phi, g);
  }

  EnhanceResult result{istft(spec), std::move(spp), std::move(noise), std::move(gain)};
  result.audio.samples.resize(noisy.size());
  result.audio.sample_rate = noisy.sample_rate;
  return result;
}

EnhanceResult enhance(const AudioBuffer& noisy, const EnhanceConfig& config,
                      std::shared_ptr<const nn::ModelBundle> model) {
  config.validate();
  auto provider = make_spp_provider(config, std::move(model));
  return enhance(noisy, config, *provider);
}

}  // namespace sppkit
