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
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sppkit/features.hpp"
#include "sppkit/nn/layers.hpp"
#include "sppkit/nn/tensor.hpp"
#include "sppkit/spp.hpp"

namespace sppkit::nn {

enum class ModelVariant { kBlstm, kAttention };

std::string_view variant_name(ModelVariant variant);
/// Accepts "blstm" or "attention"; throws InvalidConfig otherwise.
ModelVariant parse_variant(std::string_view name);

struct TensorSpec {
  std::string name;
  Shape shape;
};

/// Architecture of the SPP network: a shared encoder followed by per-bin output layers.
///
/// Graph, per utterance of L frames with K bins:
///   encoder     frames [L, K] -> latent [L, latent_dim]
///               (blstm: LSTM with encoder_hidden units then a linear
///               projection; attention: one linear layer)
///   per-bin FC  concat(feature(k, l), latent(l)) -> scalar, one FC per bin
///   residual    per-bin outputs + input features, then layer norm over K
///   decoder     BLSTM (hidden per direction) or stacked self-attention
///   fc1, fc2    decoder_out -> fc1_out -> K, then sigmoid
struct ModelDescriptor {
  ModelVariant variant = ModelVariant::kBlstm;
  std::size_t num_bins = 129;
  std::size_t latent_dim = 32;
  std::size_t encoder_hidden = 129;  ///< blstm only
  std::size_t decoder_hidden = 129;  ///< BLSTM units per direction / attention model dim
  std::size_t heads = 3;
  std::size_t attention_layers = 2;
  std::size_t fc1_out = 258;
  bool causal_mask = false;

  static ModelDescriptor blstm();
  static ModelDescriptor attention();

  std::size_t per_bin_in() const { return latent_dim + 1; }
  std::size_t decoder_out() const;
  /// Throws InvalidConfig on inconsistent dimensions.
  void validate() const;
  /// Every trainable tensor in file order.
  std::vector<TensorSpec> inventory() const;

  friend bool operator==(const ModelDescriptor&, const ModelDescriptor&) = default;
};

/// Exact trainable parameter total of the graph.
std::size_t param_count(const ModelDescriptor& descriptor);

inline constexpr std::uint32_t kModelFormatVersion = 1;

struct ModelBundle {
  ModelDescriptor descriptor;
  std::map<std::string, Tensor> tensors;
  NormStats norm_stats;
  std::uint32_t format_version = kModelFormatVersion;

  /// Throws ValidationError naming a missing tensor.
  const Tensor& tensor(const std::string& name) const;
  /// Checks presence and exact shape of every inventory tensor, finiteness
  /// of all values and the normalisation statistics.
  void validate() const;
  /// Tensors present in the bundle but absent from the inventory.
  std::vector<std::string> unexpected_tensors() const;
};

/// Derives the descriptor from tensor names and shapes (variant from the
/// decoder tensors, dimensions from their shapes).
ModelDescriptor infer_descriptor(const std::map<std::string, Tensor>& tensors);

/// Sigmoid outputs are kept inside [kProbabilityMargin, 1 - kProbabilityMargin]
/// so that no estimate is exactly 0 or 1.
inline constexpr double kProbabilityMargin = 1e-7;

/// Runs the network on features normalised with bundle.norm_stats.
SppMap model_forward(const ModelBundle& bundle, const LogPowerFeatures& features);

}  // namespace sppkit::nn
