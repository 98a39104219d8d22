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

#include "sppkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sppkit/errors.hpp"

namespace sppkit {

double log_err(const PowerGrid& ref, const PowerGrid& est, double floor) {
  if (!ref.same_shape(est)) throw ShapeMismatch("LogErr operands differ in shape");
  if (ref.empty()) throw ShapeMismatch("LogErr needs at least one bin");
  double acc = 0.0;
  const auto& r = ref.values();
  const auto& e = est.values();
  for (std::size_t i = 0; i < r.size(); ++i) {
    acc += std::abs(10.0 * std::log10(std::max(r[i], floor) / std::max(e[i], floor)));
  }
  return acc / static_cast<double>(r.size());
}

RocCurve roc(std::span<const double> scores, std::span<const double> truth,
             double label_threshold) {
  if (scores.size() != truth.size()) throw ShapeMismatch("ROC scores and truth differ in size");
  std::size_t positives = 0;
  for (double t : truth) positives += t >= label_threshold ? 1 : 0;
  const std::size_t negatives = truth.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw ValidationError("ROC needs both classes after labelling the truth");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  curve.thresholds.push_back(std::numeric_limits<double>::infinity());
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    while (i < order.size() && scores[order[i]] == threshold) {
      if (truth[order[i]] >= label_threshold) {
        ++tp;
      } else {
        ++fp;
      }
      ++i;
    }
    curve.points.push_back({static_cast<double>(fp) / negatives,
                            static_cast<double>(tp) / positives});
    curve.thresholds.push_back(threshold);
  }
  return curve;
}

RocCurve roc(const SppMap& scores, const SppMap& truth, double label_threshold) {
  if (!scores.values().same_shape(truth.values())) {
    throw ShapeMismatch("ROC score and truth maps differ in shape");
  }
  return roc(scores.values().values(), truth.values().values(), label_threshold);
}

double auc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    area += (b.pfa - a.pfa) * (a.pd + b.pd) * 0.5;
  }
  return area;
}

double pd_at_pfa(const RocCurve& curve, double pfa_target) {
  const auto& pts = curve.points;
  if (pts.empty()) throw ValidationError("empty ROC curve");
  // Last point at or below the target: the best detection rate reachable
  // without exceeding it.
  std::size_t below = 0;
  for (std::size_t i = 0; i < pts.size() && pts[i].pfa <= pfa_target; ++i) below = i;
  if (pts[below].pfa == pfa_target || below + 1 == pts.size()) return pts[below].pd;
  const auto& a = pts[below];
  const auto& b = pts[below + 1];
  const double t = (pfa_target - a.pfa) / (b.pfa - a.pfa);
  return a.pd + t * (b.pd - a.pd);
}

std::string roc_csv(const RocCurve& curve) {
  std::ostringstream out;
  out.precision(17);
  out << "threshold,pfa,pd\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    out << curve.thresholds[i] << ',' << curve.points[i].pfa << ',' << curve.points[i].pd << '\n';
  }
  return out.str();
}

double kl_divergence(std::span<const double> target, std::span<const double> estimate,
                     double eps, KlForm form) {
  if (target.size() != estimate.size()) throw ShapeMismatch("KL operands differ in size");
  if (target.empty()) throw ShapeMismatch("KL needs at least one bin");
  if (!(eps > 0.0 && eps < 0.5)) throw InvalidConfig("KL eps must lie in (0, 0.5)");
  double acc = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double t = std::clamp(target[i], eps, 1.0 - eps);
    const double e = std::clamp(estimate[i], eps, 1.0 - eps);
    if (target[i] != 0.0) acc += t * std::log(t / e);
    if (form == KlForm::kBinary) acc += (1.0 - t) * std::log((1.0 - t) / (1.0 - e));
  }
  return acc / static_cast<double>(target.size());
}

double kl_divergence(const SppMap& target, const SppMap& estimate, double eps, KlForm form) {
  if (!target.values().same_shape(estimate.values())) {
    throw ShapeMismatch("KL maps differ in shape");
  }
  return kl_divergence(target.values().values(), estimate.values().values(), eps, form);
}

double segmental_snr(const AudioBuffer& ref, const AudioBuffer& est, const SegSnrConfig& config) {
  if (ref.size() != est.size()) {
    throw ShapeMismatch("segmental SNR needs equal lengths, got " + std::to_string(ref.size()) +
                        " and " + std::to_string(est.size()));
  }
  if (config.frame_len == 0) throw InvalidConfig("frame length must be positive");
  const std::size_t frames = ref.size() / config.frame_len;
  std::vector<double> ref_power(frames), err_power(frames);
  double mean_ref = 0.0;
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t i = f * config.frame_len; i < (f + 1) * config.frame_len; ++i) {
      const double r = ref.samples[i];
      const double e = r - est.samples[i];
      ref_power[f] += r * r;
      err_power[f] += e * e;
    }
    mean_ref += ref_power[f] / static_cast<double>(std::max<std::size_t>(frames, 1));
  }
  const double silent = mean_ref * std::pow(10.0, config.silence_db / 10.0);
  double acc = 0.0;
  std::size_t active = 0;
  for (std::size_t f = 0; f < frames; ++f) {
    if (ref_power[f] <= silent || ref_power[f] <= 0.0) continue;
    const double snr = err_power[f] > 0.0 ? 10.0 * std::log10(ref_power[f] / err_power[f])
                                          : config.ceil_db;
    acc += std::clamp(snr, config.floor_db, config.ceil_db);
    ++active;
  }
  if (active == 0) throw ValidationError("reference has no active frames");
  return acc / static_cast<double>(active);
}

}  // namespace sppkit
