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

#include "sppkit/nn/reference.hpp"

#include <algorithm>
#include <cmath>

namespace sppkit::nn::reference {
namespace {

double at(const Tensor& t, std::size_t i, std::size_t j) {
  return static_cast<double>(t.data()[i * t.dim(1) + j]);
}
double at(const Tensor& t, std::size_t i) { return static_cast<double>(t.data()[i]); }

double logistic(double x) {
  return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

std::string attn(std::size_t i) { return "decoder.attn" + std::to_string(i) + "."; }

}  // namespace

Matrix to_matrix(const Tensor& t) {
  Matrix m(t.dim(0), std::vector<double>(t.dim(1)));
  for (std::size_t i = 0; i < t.dim(0); ++i) {
    for (std::size_t j = 0; j < t.dim(1); ++j) m[i][j] = at(t, i, j);
  }
  return m;
}

Matrix linear(const Matrix& x, const Tensor& weight, const Tensor& bias) {
  const std::size_t out_dim = weight.dim(0);
  const std::size_t in_dim = weight.dim(1);
  Matrix y(x.size(), std::vector<double>(out_dim));
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t o = 0; o < out_dim; ++o) {
      double s = at(bias, o);
      for (std::size_t i = 0; i < in_dim; ++i) s += at(weight, o, i) * x[r][i];
      y[r][o] = s;
    }
  }
  return y;
}

Matrix lstm(const Matrix& x, const Tensor& weight_ih, const Tensor& weight_hh,
            const Tensor& bias_ih, const Tensor& bias_hh, bool reverse) {
  const std::size_t hidden = weight_hh.dim(1);
  const std::size_t in_dim = weight_ih.dim(1);
  const std::size_t steps = x.size();
  Matrix out(steps, std::vector<double>(hidden));
  std::vector<double> h(hidden, 0.0), c(hidden, 0.0);
  // Gate g occupies rows [g * hidden, (g + 1) * hidden): input, forget, cell, output.
  auto gate = [&](std::size_t g, std::size_t unit, const std::vector<double>& xt,
                  const std::vector<double>& hp) {
    const std::size_t row = g * hidden + unit;
    double s = at(bias_ih, row) + at(bias_hh, row);
    for (std::size_t i = 0; i < in_dim; ++i) s += at(weight_ih, row, i) * xt[i];
    for (std::size_t i = 0; i < hidden; ++i) s += at(weight_hh, row, i) * hp[i];
    return s;
  };
  for (std::size_t n = 0; n < steps; ++n) {
    const std::size_t t = reverse ? steps - 1 - n : n;
    const std::vector<double> h_prev = h;
    for (std::size_t u = 0; u < hidden; ++u) {
      const double i_t = logistic(gate(0, u, x[t], h_prev));
      const double f_t = logistic(gate(1, u, x[t], h_prev));
      const double g_t = std::tanh(gate(2, u, x[t], h_prev));
      const double o_t = logistic(gate(3, u, x[t], h_prev));
      c[u] = f_t * c[u] + i_t * g_t;
      h[u] = o_t * std::tanh(c[u]);
    }
    out[t] = h;
  }
  return out;
}

Matrix multi_head_attention(const Matrix& x, const Tensor& in_proj_weight,
                            const Tensor& in_proj_bias, const Tensor& out_proj_weight,
                            const Tensor& out_proj_bias, std::size_t heads, bool causal) {
  const std::size_t steps = x.size();
  const std::size_t d = out_proj_weight.dim(0);
  const std::size_t hd = d / heads;
  Matrix concat(steps, std::vector<double>(d, 0.0));
  for (std::size_t h = 0; h < heads; ++h) {
    Matrix q(steps, std::vector<double>(hd)), k = q, v = q;
    for (std::size_t t = 0; t < steps; ++t) {
      for (std::size_t j = 0; j < hd; ++j) {
        const std::size_t rq = h * hd + j, rk = d + h * hd + j, rv = 2 * d + h * hd + j;
        double sq = at(in_proj_bias, rq), sk = at(in_proj_bias, rk), sv = at(in_proj_bias, rv);
        for (std::size_t i = 0; i < d; ++i) {
          sq += at(in_proj_weight, rq, i) * x[t][i];
          sk += at(in_proj_weight, rk, i) * x[t][i];
          sv += at(in_proj_weight, rv, i) * x[t][i];
        }
        q[t][j] = sq;
        k[t][j] = sk;
        v[t][j] = sv;
      }
    }
    for (std::size_t t = 0; t < steps; ++t) {
      std::vector<double> w(steps, 0.0);
      double biggest = -1e300;
      const std::size_t last = causal ? t : steps - 1;
      for (std::size_t s = 0; s <= last; ++s) {
        double e = 0.0;
        for (std::size_t j = 0; j < hd; ++j) e += q[t][j] * k[s][j];
        w[s] = e / std::sqrt(static_cast<double>(hd));
        biggest = std::max(biggest, w[s]);
      }
      double total = 0.0;
      for (std::size_t s = 0; s <= last; ++s) total += (w[s] = std::exp(w[s] - biggest));
      for (std::size_t j = 0; j < hd; ++j) {
        double acc = 0.0;
        for (std::size_t s = 0; s <= last; ++s) acc += w[s] / total * v[s][j];
        concat[t][h * hd + j] = acc;
      }
    }
  }
  Matrix y = linear(concat, out_proj_weight, out_proj_bias);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t j = 0; j < d; ++j) y[t][j] += x[t][j];
  }
  return y;
}

Matrix layer_norm(const Matrix& x, const Tensor& gain, const Tensor& bias, double eps) {
  Matrix y = x;
  for (std::size_t r = 0; r < x.size(); ++r) {
    const double n = static_cast<double>(x[r].size());
    double mean = 0.0;
    for (double v : x[r]) mean += v / n;
    double var = 0.0;
    for (double v : x[r]) var += (v - mean) * (v - mean) / n;
    for (std::size_t j = 0; j < x[r].size(); ++j) {
      y[r][j] = (x[r][j] - mean) / std::sqrt(var + eps) * at(gain, j) + at(bias, j);
    }
  }
  return y;
}

RealGrid forward(const ModelBundle& b, const RealGrid& features) {
  const auto& desc = b.descriptor;
  const std::size_t bins = features.bins();
  const std::size_t steps = features.frames();
  Matrix frames(steps, std::vector<double>(bins));
  for (std::size_t l = 0; l < steps; ++l) {
    for (std::size_t k = 0; k < bins; ++k) {
      frames[l][k] = static_cast<double>(static_cast<float>(features(k, l)));
    }
  }

  Matrix latent;
  if (desc.variant == ModelVariant::kBlstm) {
    const Matrix enc = lstm(frames, b.tensor("encoder.lstm.weight_ih"),
                            b.tensor("encoder.lstm.weight_hh"), b.tensor("encoder.lstm.bias_ih"),
                            b.tensor("encoder.lstm.bias_hh"), false);
    latent = linear(enc, b.tensor("encoder.proj.weight"), b.tensor("encoder.proj.bias"));
  } else {
    latent = linear(frames, b.tensor("encoder.proj.weight"), b.tensor("encoder.proj.bias"));
  }

  const Tensor& bw = b.tensor("bins.weight");
  const Tensor& bb = b.tensor("bins.bias");
  Matrix mixed(steps, std::vector<double>(bins));
  for (std::size_t l = 0; l < steps; ++l) {
    for (std::size_t k = 0; k < bins; ++k) {
      std::vector<double> input{frames[l][k]};
      input.insert(input.end(), latent[l].begin(), latent[l].end());
      double s = at(bb, k);
      for (std::size_t i = 0; i < input.size(); ++i) s += at(bw, k, i) * input[i];
      mixed[l][k] = s + frames[l][k];
    }
  }
  Matrix x = layer_norm(mixed, b.tensor("norm.weight"), b.tensor("norm.bias"), 1e-5);

  if (desc.variant == ModelVariant::kBlstm) {
    const Matrix fwd = lstm(x, b.tensor("decoder.fwd.weight_ih"), b.tensor("decoder.fwd.weight_hh"),
                            b.tensor("decoder.fwd.bias_ih"), b.tensor("decoder.fwd.bias_hh"), false);
    const Matrix bwd = lstm(x, b.tensor("decoder.bwd.weight_ih"), b.tensor("decoder.bwd.weight_hh"),
                            b.tensor("decoder.bwd.bias_ih"), b.tensor("decoder.bwd.bias_hh"), true);
    for (std::size_t l = 0; l < steps; ++l) {
      x[l] = fwd[l];
      x[l].insert(x[l].end(), bwd[l].begin(), bwd[l].end());
    }
  } else {
    for (std::size_t i = 0; i < desc.attention_layers; ++i) {
      x = multi_head_attention(x, b.tensor(attn(i) + "in_proj_weight"),
                               b.tensor(attn(i) + "in_proj_bias"),
                               b.tensor(attn(i) + "out_proj.weight"),
                               b.tensor(attn(i) + "out_proj.bias"), desc.heads, desc.causal_mask);
    }
  }
  x = linear(x, b.tensor("fc1.weight"), b.tensor("fc1.bias"));
  x = linear(x, b.tensor("fc2.weight"), b.tensor("fc2.bias"));

  RealGrid out(bins, steps);
  for (std::size_t l = 0; l < steps; ++l) {
    for (std::size_t k = 0; k < bins; ++k) {
      out(k, l) = std::clamp(logistic(x[l][k]), kProbabilityMargin, 1.0 - kProbabilityMargin);
    }
  }
  return out;
}

}  // namespace sppkit::nn::reference
