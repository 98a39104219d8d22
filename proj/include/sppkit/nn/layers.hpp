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

#include "sppkit/nn/tensor.hpp"

namespace sppkit::nn {

/// x [N, in] * W^T [in, out] + b -> [N, out].
Tensor fc_forward(const Tensor& x, const Tensor& weight, const Tensor& bias);

/// Four-gate LSTM parameters, gates stacked in the order input, forget,
/// cell, output: weight_ih [4H, in], weight_hh [4H, H], two [4H] biases.
struct LstmWeights {
  Tensor weight_ih;
  Tensor weight_hh;
  Tensor bias_ih;
  Tensor bias_hh;

  std::size_t hidden() const { return weight_hh.rank() == 2 ? weight_hh.dim(1) : 0; }
  std::size_t input() const { return weight_ih.rank() == 2 ? weight_ih.dim(1) : 0; }
  void validate(std::size_t input_size) const;
};

enum class Direction { kForward, kBackward };

/// seq [L, in] -> [L, H], zero initial hidden and cell state. The backward
/// direction consumes frames L-1..0 and writes output row l for frame l.
Tensor lstm_forward(const Tensor& seq, const LstmWeights& weights,
                    Direction direction = Direction::kForward);

/// Concatenation of the forward and backward passes per frame: [L, 2H].
Tensor blstm_forward(const Tensor& seq, const LstmWeights& forward,
                     const LstmWeights& backward);

/// Packed projections as in a standard multi-head attention block:
/// in_proj_weight [3d, d] stacks Q, K, V; out_proj_weight [d, d].
struct MhaWeights {
  Tensor in_proj_weight;
  Tensor in_proj_bias;
  Tensor out_proj_weight;
  Tensor out_proj_bias;

  void validate(std::size_t model_dim) const;
};

/// Self-attention over seq [L, d] with `heads` heads of size d / heads and
/// scale 1 / sqrt(d / heads), followed by the residual add: returns
/// seq + out_proj(attention(seq)).
Tensor mha_forward(const Tensor& seq, const MhaWeights& weights, std::size_t heads,
                   bool causal_mask = false);

/// Normalises every row of x [N, d] over its d features, then applies
/// the per-feature affine transform.
Tensor layer_norm(const Tensor& x, const Tensor& gain, const Tensor& bias,
                  double eps = 1e-5);

}  // namespace sppkit::nn
