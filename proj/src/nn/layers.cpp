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

#include "sppkit/nn/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sppkit/errors.hpp"

namespace sppkit::nn {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Dot product of a float row with a double vector, accumulated in double.
double dot(std::span<const float> w, std::span<const double> x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += static_cast<double>(w[i]) * x[i];
  return acc;
}

double dot(std::span<const float> w, std::span<const float> x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += static_cast<double>(w[i]) * static_cast<double>(x[i]);
  }
  return acc;
}

void require_matrix(const Tensor& t, const std::string& what) {
  if (t.rank() != 2) {
    throw ShapeMismatch(what + " must be rank 2, got " + shape_string(t.shape()));
  }
}

}  // namespace

Tensor fc_forward(const Tensor& x, const Tensor& weight, const Tensor& bias) {
  require_matrix(x, "fc input");
  require_matrix(weight, "fc weight");
  const std::size_t out_dim = weight.dim(0);
  const std::size_t in_dim = weight.dim(1);
  if (x.dim(1) != in_dim) {
    throw ShapeMismatch("fc input has " + std::to_string(x.dim(1)) +
                        " features, weight expects " + std::to_string(in_dim));
  }
  require_shape(bias, {out_dim}, "fc bias");
  const std::size_t n = x.dim(0);
  Tensor out({n, out_dim});
  const auto b = bias.data();
  for (std::size_t r = 0; r < n; ++r) {
    const auto xr = x.row(r);
    for (std::size_t o = 0; o < out_dim; ++o) {
      out(r, o) = static_cast<float>(dot(weight.row(o), xr) + b[o]);
    }
  }
  return out;
}

void LstmWeights::validate(std::size_t input_size) const {
  require_matrix(weight_hh, "lstm weight_hh");
  const std::size_t h = weight_hh.dim(1);
  require_shape(weight_hh, {4 * h, h}, "lstm weight_hh");
  require_shape(weight_ih, {4 * h, input_size}, "lstm weight_ih");
  require_shape(bias_ih, {4 * h}, "lstm bias_ih");
  require_shape(bias_hh, {4 * h}, "lstm bias_hh");
}

Tensor lstm_forward(const Tensor& seq, const LstmWeights& weights, Direction direction) {
  require_matrix(seq, "lstm input");
  weights.validate(seq.dim(1));
  const std::size_t steps = seq.dim(0);
  const std::size_t h = weights.hidden();

  std::vector<double> bias(4 * h);
  for (std::size_t g = 0; g < 4 * h; ++g) {
    bias[g] = static_cast<double>(weights.bias_ih.data()[g]) + weights.bias_hh.data()[g];
  }
  std::vector<double> hidden(h, 0.0), cell(h, 0.0), pre(4 * h);
  Tensor out({steps, h});
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t t = direction == Direction::kForward ? s : steps - 1 - s;
    const auto x = seq.row(t);
    for (std::size_t g = 0; g < 4 * h; ++g) {
      pre[g] = bias[g] + dot(weights.weight_ih.row(g), x) + dot(weights.weight_hh.row(g), hidden);
    }
    for (std::size_t j = 0; j < h; ++j) {
      const double in_gate = sigmoid(pre[j]);
      const double forget_gate = sigmoid(pre[h + j]);
      const double candidate = std::tanh(pre[2 * h + j]);
      const double out_gate = sigmoid(pre[3 * h + j]);
      cell[j] = forget_gate * cell[j] + in_gate * candidate;
      hidden[j] = out_gate * std::tanh(cell[j]);
      out(t, j) = static_cast<float>(hidden[j]);
    }
  }
  return out;
}

Tensor blstm_forward(const Tensor& seq, const LstmWeights& forward, const LstmWeights& backward) {
  const Tensor fwd = lstm_forward(seq, forward, Direction::kForward);
  const Tensor bwd = lstm_forward(seq, backward, Direction::kBackward);
  const std::size_t steps = fwd.dim(0);
  const std::size_t hf = fwd.dim(1);
  const std::size_t hb = bwd.dim(1);
  Tensor out({steps, hf + hb});
  for (std::size_t t = 0; t < steps; ++t) {
    std::copy(fwd.row(t).begin(), fwd.row(t).end(), out.row(t).begin());
    std::copy(bwd.row(t).begin(), bwd.row(t).end(), out.row(t).begin() + hf);
  }
  return out;
}

void MhaWeights::validate(std::size_t model_dim) const {
  require_shape(in_proj_weight, {3 * model_dim, model_dim}, "attention in_proj_weight");
  require_shape(in_proj_bias, {3 * model_dim}, "attention in_proj_bias");
  require_shape(out_proj_weight, {model_dim, model_dim}, "attention out_proj.weight");
  require_shape(out_proj_bias, {model_dim}, "attention out_proj.bias");
}

Tensor mha_forward(const Tensor& seq, const MhaWeights& weights, std::size_t heads,
                   bool causal_mask) {
  require_matrix(seq, "attention input");
  const std::size_t steps = seq.dim(0);
  const std::size_t d = seq.dim(1);
  if (heads == 0 || d % heads != 0) {
    throw ShapeMismatch("model dimension " + std::to_string(d) + " is not divisible by " +
                        std::to_string(heads) + " heads");
  }
  weights.validate(d);
  const std::size_t head_dim = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(head_dim));

  // qkv[t] holds the 3d projected values of frame t.
  std::vector<double> qkv(steps * 3 * d);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t o = 0; o < 3 * d; ++o) {
      qkv[t * 3 * d + o] = dot(weights.in_proj_weight.row(o), seq.row(t)) +
                           weights.in_proj_bias.data()[o];
    }
  }
  auto q = [&](std::size_t t, std::size_t j) { return qkv[t * 3 * d + j]; };
  auto k = [&](std::size_t t, std::size_t j) { return qkv[t * 3 * d + d + j]; };
  auto v = [&](std::size_t t, std::size_t j) { return qkv[t * 3 * d + 2 * d + j]; };

  std::vector<double> context(steps * d, 0.0);
  std::vector<double> scores(steps);
  for (std::size_t head = 0; head < heads; ++head) {
    const std::size_t off = head * head_dim;
    for (std::size_t t = 0; t < steps; ++t) {
      const std::size_t visible = causal_mask ? t + 1 : steps;
      double max_score = -std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < visible; ++s) {
        double acc = 0.0;
        for (std::size_t j = 0; j < head_dim; ++j) acc += q(t, off + j) * k(s, off + j);
        scores[s] = acc * scale;
        max_score = std::max(max_score, scores[s]);
      }
      double norm = 0.0;
      for (std::size_t s = 0; s < visible; ++s) {
        scores[s] = std::exp(scores[s] - max_score);
        norm += scores[s];
      }
      for (std::size_t s = 0; s < visible; ++s) {
        const double w = scores[s] / norm;
        for (std::size_t j = 0; j < head_dim; ++j) {
          context[t * d + off + j] += w * v(s, off + j);
        }
      }
    }
  }

  Tensor out({steps, d});
  for (std::size_t t = 0; t < steps; ++t) {
    const std::span<const double> ctx(context.data() + t * d, d);
    for (std::size_t o = 0; o < d; ++o) {
      out(t, o) = static_cast<float>(seq(t, o) + dot(weights.out_proj_weight.row(o), ctx) +
                                     weights.out_proj_bias.data()[o]);
    }
  }
  return out;
}

Tensor layer_norm(const Tensor& x, const Tensor& gain, const Tensor& bias, double eps) {
  require_matrix(x, "layer_norm input");
  const std::size_t d = x.dim(1);
  if (d == 0) throw ShapeMismatch("layer_norm needs at least one feature");
  if (!(eps > 0.0)) throw InvalidConfig("layer_norm eps must be positive");
  require_shape(gain, {d}, "layer_norm weight");
  require_shape(bias, {d}, "layer_norm bias");
  Tensor out(x.shape());
  for (std::size_t r = 0; r < x.dim(0); ++r) {
    const auto row = x.row(r);
    double mean = 0.0;
    for (float v : row) mean += v;
    mean /= static_cast<double>(d);
    double var = 0.0;
    for (float v : row) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d);
    const double inv = 1.0 / std::sqrt(var + eps);
    for (std::size_t j = 0; j < d; ++j) {
      out(r, j) = static_cast<float>((row[j] - mean) * inv * gain.data()[j] + bias.data()[j]);
    }
  }
  return out;
}

}  // namespace sppkit::nn
