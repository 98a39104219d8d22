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
#include <span>
#include <string>
#include <vector>

#include "sppkit/audio.hpp"
#include "sppkit/grid.hpp"
#include "sppkit/noise_tracker.hpp"
#include "sppkit/spp.hpp"

namespace sppkit {

/// Symmetric mean log-spectral distortion in dB:
/// mean over bins of |10 log10(ref / est)|, both floored at `floor`.
double log_err(const PowerGrid& ref, const PowerGrid& est, double floor = kNoiseFloor);

inline constexpr double kDefaultLabelThreshold = 0.135;
inline constexpr double kDefaultPfaTarget = 0.05;

struct RocPoint {
  double pfa = 0.0;
  double pd = 0.0;
};

/// Operating points ordered by increasing false-alarm rate, from (0, 0)
/// to (1, 1). thresholds[i] is the score threshold of points[i]
/// (score >= threshold counts as detection); the first is +infinity.
struct RocCurve {
  std::vector<RocPoint> points;
  std::vector<double> thresholds;
};

/// Truth bins with value >= label_threshold are positives. Throws
/// ValidationError when only one class is present.
RocCurve roc(std::span<const double> scores, std::span<const double> truth,
             double label_threshold = kDefaultLabelThreshold);
RocCurve roc(const SppMap& scores, const SppMap& truth,
             double label_threshold = kDefaultLabelThreshold);

/// Trapezoidal area under the curve.
double auc(const RocCurve& curve);

/// Detection rate at the requested false-alarm rate, linearly interpolated.
double pd_at_pfa(const RocCurve& curve, double pfa_target = kDefaultPfaTarget);

/// CSV with header "threshold,pfa,pd".
std::string roc_csv(const RocCurve& curve);

enum class KlForm {
  kAsPrinted,  ///< t ln(t / e) only
  kBinary,     ///< t ln(t / e) + (1 - t) ln((1 - t) / (1 - e))
};

inline constexpr double kDefaultKlEps = 1e-7;

/// Mean over bins of the divergence of `estimate` from `target`. Both are
/// clamped into [eps, 1 - eps]; a target of exactly zero contributes zero to
/// the t ln(t / e) term.
double kl_divergence(std::span<const double> target, std::span<const double> estimate,
                     double eps = kDefaultKlEps, KlForm form = KlForm::kAsPrinted);
double kl_divergence(const SppMap& target, const SppMap& estimate, double eps = kDefaultKlEps,
                     KlForm form = KlForm::kAsPrinted);

struct SegSnrConfig {
  std::size_t frame_len = 256;
  double floor_db = -10.0;
  double ceil_db = 35.0;
  /// Reference frames whose power is this far below the mean frame power
  /// are treated as silent and skipped.
  double silence_db = -40.0;
};

/// Mean over non-silent reference frames of
/// clamp(10 log10(P_ref / P_err), floor_db, ceil_db).
double segmental_snr(const AudioBuffer& ref, const AudioBuffer& est, const SegSnrConfig& config = {});

}  // namespace sppkit
