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

#include "sppkit/stft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "sppkit/errors.hpp"

namespace sppkit {
namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuffer alloc_real(std::size_t n) { return RealBuffer(fftw_alloc_real(n)); }
ComplexBuffer alloc_complex(std::size_t n) {
  return ComplexBuffer(fftw_alloc_complex(n));
}

// FFTW planning is not thread-safe; execution with the new-array interface
// is, as long as buffers share the planning alignment (fftw_alloc_*).
class RealFft {
 public:
  explicit RealFft(std::size_t n) : n_(n) {
    auto in = alloc_real(n);
    auto out = alloc_complex(n / 2 + 1);
    const int size = static_cast<int>(n);
    forward_ = fftw_plan_dft_r2c_1d(size, in.get(), out.get(), FFTW_ESTIMATE);
    inverse_ = fftw_plan_dft_c2r_1d(size, out.get(), in.get(), FFTW_ESTIMATE);
  }
  ~RealFft() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  void forward(double* in, fftw_complex* out) const {
    fftw_execute_dft_r2c(forward_, in, out);
  }
  // Unnormalised: result is n times the inverse DFT.
  void inverse(fftw_complex* in, double* out) const {
    fftw_execute_dft_c2r(inverse_, in, out);
  }

 private:
  std::size_t n_;
  fftw_plan forward_;
  fftw_plan inverse_;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<const RealFft> fft_for(std::size_t n) {
  static std::map<std::size_t, std::shared_ptr<const RealFft>> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_shared<const RealFft>(n)).first;
  }
  return it->second;
}

}  // namespace

void StftConfig::validate() const {
  if (window_len < 2) throw InvalidConfig("window_len must be at least 2");
  if (hop * 2 != window_len) throw InvalidConfig("hop must equal window_len / 2");
  if (fft_size != window_len) throw InvalidConfig("fft_size must equal window_len");
}

std::vector<double> hamming_window(std::size_t len) {
  if (len < 2) throw InvalidConfig("window length must be at least 2");
  std::vector<double> w(len);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(len);
  for (std::size_t n = 0; n < len; ++n) {
    w[n] = 0.54 - 0.46 * std::cos(step * static_cast<double>(n));
  }
  return w;
}

std::size_t frame_count(std::size_t num_samples, const StftConfig& config) {
  if (num_samples < config.window_len) return 0;
  return (num_samples - config.window_len) / config.hop + 1;
}

Spectrogram stft(const AudioBuffer& audio, const StftConfig& config) {
  config.validate();
  const std::size_t n = audio.samples.size();
  if (n < config.window_len) {
    throw InvalidConfig("audio too short for STFT: need at least " +
                        std::to_string(config.window_len) + " samples, got " +
                        std::to_string(n));
  }
  const std::size_t frames = frame_count(n, config);
  const std::size_t bins = config.num_bins();
  const auto window = hamming_window(config.window_len);
  const auto fft = fft_for(config.fft_size);

  Spectrogram spec{ComplexGrid(bins, frames), config};
  auto in = alloc_real(config.fft_size);
  auto out = alloc_complex(bins);
  for (std::size_t l = 0; l < frames; ++l) {
    const std::size_t start = l * config.hop;
    for (std::size_t i = 0; i < config.window_len; ++i) {
      in[i] = audio.samples[start + i] * window[i];
    }
    fft->forward(in.get(), out.get());
    for (std::size_t k = 0; k < bins; ++k) {
      spec.data(k, l) = {out[k][0], out[k][1]};
    }
  }
  return spec;
}

AudioBuffer istft(const Spectrogram& spec) {
  const StftConfig& config = spec.config;
  config.validate();
  const std::size_t bins = config.num_bins();
  if (spec.data.bins() != bins) {
    throw ShapeMismatch("spectrogram has " + std::to_string(spec.data.bins()) +
                        " bins, config expects " + std::to_string(bins));
  }
  const std::size_t frames = spec.frames();
  AudioBuffer out;
  if (frames == 0) return out;

  const std::size_t len = (frames - 1) * config.hop + config.window_len;
  out.samples.assign(len, 0.0);
  std::vector<double> envelope(len, 0.0);
  const auto window = hamming_window(config.window_len);
  const auto fft = fft_for(config.fft_size);
  const double scale = 1.0 / static_cast<double>(config.fft_size);

  auto in = alloc_complex(bins);
  auto time = alloc_real(config.fft_size);
  for (std::size_t l = 0; l < frames; ++l) {
    for (std::size_t k = 0; k < bins; ++k) {
      in[k][0] = spec.data(k, l).real();
      in[k][1] = spec.data(k, l).imag();
    }
    fft->inverse(in.get(), time.get());
    const std::size_t start = l * config.hop;
    for (std::size_t i = 0; i < config.window_len; ++i) {
      out.samples[start + i] += time[i] * scale * window[i];
      envelope[start + i] += window[i] * window[i];
    }
  }
  for (std::size_t i = 0; i < len; ++i) out.samples[i] /= envelope[i];
  return out;
}

PowerGrid periodogram(const Spectrogram& spec) {
  PowerGrid out(spec.bins(), spec.frames());
  auto& dst = out.values();
  const auto& src = spec.data.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = std::norm(src[i]);
  return out;
}

}  // namespace sppkit
