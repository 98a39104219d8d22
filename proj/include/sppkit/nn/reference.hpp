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

// Scalar double-precision version of every layer and of the full graph,
// written with explicit loops and no code shared with the runtime. Golden
// fixtures take their expected outputs from here.

#include <cstddef>
#include <vector>

#include "sppkit/grid.hpp"
#include "sppkit/nn/model.hpp"

namespace sppkit::nn::reference {

using Matrix = std::vector<std::vector<double>>;  // rows of features

Matrix to_matrix(const Tensor& t);

Matrix linear(const Matrix& x, const Tensor& weight, const Tensor& bias);
Matrix lstm(const Matrix& x, const Tensor& weight_ih, const Tensor& weight_hh,
            const Tensor& bias_ih, const Tensor& bias_hh, bool reverse);
Matrix multi_head_attention(const Matrix& x, const Tensor& in_proj_weight,
                            const Tensor& in_proj_bias, const Tensor& out_proj_weight,
                            const Tensor& out_proj_bias, std::size_t heads, bool causal);
Matrix layer_norm(const Matrix& x, const Tensor& gain, const Tensor& bias, double eps);

/// Full graph on already-normalised K x L features; returns K x L
/// probabilities with the same output margin as the runtime.
RealGrid forward(const ModelBundle& bundle, const RealGrid& normalized_features);

}  // namespace sppkit::nn::reference
