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

#include "sppkit/nn/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sppkit/errors.hpp"

namespace sppkit::nn {
namespace {

std::string attn_prefix(std::size_t layer) {
  return "decoder.attn" + std::to_string(layer) + ".";
}

void add_lstm(std::vector<TensorSpec>& out, const std::string& prefix, std::size_t in,
              std::size_t hidden) {
  out.push_back({prefix + "weight_ih", {4 * hidden, in}});
  out.push_back({prefix + "weight_hh", {4 * hidden, hidden}});
  out.push_back({prefix + "bias_ih", {4 * hidden}});
  out.push_back({prefix + "bias_hh", {4 * hidden}});
}

LstmWeights lstm_weights(const ModelBundle& b, const std::string& prefix) {
  return {b.tensor(prefix + "weight_ih"), b.tensor(prefix + "weight_hh"),
          b.tensor(prefix + "bias_ih"), b.tensor(prefix + "bias_hh")};
}

MhaWeights mha_weights(const ModelBundle& b, const std::string& prefix) {
  return {b.tensor(prefix + "in_proj_weight"), b.tensor(prefix + "in_proj_bias"),
          b.tensor(prefix + "out_proj.weight"), b.tensor(prefix + "out_proj.bias")};
}

Tensor transpose_to_frames(const RealGrid& grid) {
  Tensor out({grid.frames(), grid.bins()});
  for (std::size_t k = 0; k < grid.bins(); ++k) {
    for (std::size_t l = 0; l < grid.frames(); ++l) {
      out(l, k) = static_cast<float>(grid(k, l));
    }
  }
  return out;
}

}  // namespace

std::string_view variant_name(ModelVariant variant) {
  return variant == ModelVariant::kBlstm ? "blstm" : "attention";
}

ModelVariant parse_variant(std::string_view name) {
  if (name == "blstm") return ModelVariant::kBlstm;
  if (name == "attention") return ModelVariant::kAttention;
  throw InvalidConfig("unknown model variant '" + std::string(name) + "'");
}

ModelDescriptor ModelDescriptor::blstm() { return ModelDescriptor{}; }

ModelDescriptor ModelDescriptor::attention() {
  ModelDescriptor d;
  d.variant = ModelVariant::kAttention;
  d.encoder_hidden = 0;
  return d;
}

std::size_t ModelDescriptor::decoder_out() const {
  return variant == ModelVariant::kBlstm ? 2 * decoder_hidden : decoder_hidden;
}

void ModelDescriptor::validate() const {
  if (num_bins == 0 || latent_dim == 0 || fc1_out == 0 || decoder_hidden == 0) {
    throw InvalidConfig("model dimensions must be positive");
  }
  if (variant == ModelVariant::kBlstm) {
    if (encoder_hidden == 0) throw InvalidConfig("blstm encoder needs hidden units");
  } else {
    if (decoder_hidden != num_bins) {
      throw InvalidConfig("attention decoder must operate on num_bins features");
    }
    if (heads == 0 || decoder_hidden % heads != 0) {
      throw InvalidConfig("attention heads must divide the model dimension");
    }
    if (attention_layers == 0) throw InvalidConfig("attention decoder needs layers");
  }
}

std::vector<TensorSpec> ModelDescriptor::inventory() const {
  validate();
  std::vector<TensorSpec> out;
  if (variant == ModelVariant::kBlstm) {
    add_lstm(out, "encoder.lstm.", num_bins, encoder_hidden);
    out.push_back({"encoder.proj.weight", {latent_dim, encoder_hidden}});
  } else {
    out.push_back({"encoder.proj.weight", {latent_dim, num_bins}});
  }
  out.push_back({"encoder.proj.bias", {latent_dim}});
  out.push_back({"bins.weight", {num_bins, per_bin_in()}});
  out.push_back({"bins.bias", {num_bins}});
  out.push_back({"norm.weight", {num_bins}});
  out.push_back({"norm.bias", {num_bins}});
  if (variant == ModelVariant::kBlstm) {
    add_lstm(out, "decoder.fwd.", num_bins, decoder_hidden);
    add_lstm(out, "decoder.bwd.", num_bins, decoder_hidden);
  } else {
    const std::size_t d = decoder_hidden;
    for (std::size_t i = 0; i < attention_layers; ++i) {
      out.push_back({attn_prefix(i) + "in_proj_weight", {3 * d, d}});
      out.push_back({attn_prefix(i) + "in_proj_bias", {3 * d}});
      out.push_back({attn_prefix(i) + "out_proj.weight", {d, d}});
      out.push_back({attn_prefix(i) + "out_proj.bias", {d}});
    }
  }
  out.push_back({"fc1.weight", {fc1_out, decoder_out()}});
  out.push_back({"fc1.bias", {fc1_out}});
  out.push_back({"fc2.weight", {num_bins, fc1_out}});
  out.push_back({"fc2.bias", {num_bins}});
  return out;
}

std::size_t param_count(const ModelDescriptor& descriptor) {
  std::size_t total = 0;
  for (const auto& spec : descriptor.inventory()) total += shape_numel(spec.shape);
  return total;
}

const Tensor& ModelBundle::tensor(const std::string& name) const {
  auto it = tensors.find(name);
  if (it == tensors.end()) throw ValidationError("model bundle is missing tensor '" + name + "'");
  return it->second;
}

void ModelBundle::validate() const {
  for (const auto& spec : descriptor.inventory()) {
    const Tensor& t = tensor(spec.name);
    require_shape(t, spec.shape, "tensor '" + spec.name + "'");
    if (!t.all_finite()) throw ValidationError("tensor '" + spec.name + "' has non-finite values");
  }
  try {
    norm_stats.validate();
  } catch (const InvalidConfig& e) {
    throw ValidationError(std::string("model bundle: ") + e.what());
  }
}

std::vector<std::string> ModelBundle::unexpected_tensors() const {
  std::set<std::string> known;
  for (const auto& spec : descriptor.inventory()) known.insert(spec.name);
  std::vector<std::string> extra;
  for (const auto& [name, _] : tensors) {
    if (!known.contains(name)) extra.push_back(name);
  }
  return extra;
}

ModelDescriptor infer_descriptor(const std::map<std::string, Tensor>& tensors) {
  auto find = [&](const std::string& name) -> const Tensor& {
    auto it = tensors.find(name);
    if (it == tensors.end()) throw ValidationError("model bundle is missing tensor '" + name + "'");
    return it->second;
  };
  auto dim = [&](const std::string& name, std::size_t axis) {
    const Tensor& t = find(name);
    if (axis >= t.rank()) {
      throw ShapeMismatch("tensor '" + name + "' has unexpected rank, shape " +
                          shape_string(t.shape()));
    }
    return t.dim(axis);
  };

  ModelDescriptor d;
  if (tensors.contains("decoder.fwd.weight_hh")) {
    d = ModelDescriptor::blstm();
    d.decoder_hidden = dim("decoder.fwd.weight_hh", 1);
    d.encoder_hidden = dim("encoder.lstm.weight_hh", 1);
  } else if (tensors.contains(attn_prefix(0) + "in_proj_weight")) {
    d = ModelDescriptor::attention();
    d.decoder_hidden = dim(attn_prefix(0) + "in_proj_weight", 1);
    std::size_t layers = 0;
    while (tensors.contains(attn_prefix(layers) + "in_proj_weight")) ++layers;
    d.attention_layers = layers;
  } else {
    throw ValidationError("model bundle has no recognisable decoder tensors");
  }
  d.num_bins = dim("bins.bias", 0);
  d.latent_dim = dim("encoder.proj.bias", 0);
  d.fc1_out = dim("fc1.bias", 0);
  try {
    d.validate();
  } catch (const InvalidConfig& e) {
    throw ValidationError(std::string("inconsistent model dimensions: ") + e.what());
  }
  return d;
}

SppMap model_forward(const ModelBundle& bundle, const LogPowerFeatures& features) {
  const ModelDescriptor& desc = bundle.descriptor;
  if (features.values.bins() != desc.num_bins) {
    throw ShapeMismatch("features have " + std::to_string(features.values.bins()) +
                        " bins, model expects " + std::to_string(desc.num_bins));
  }
  if (!features.normalization || !(*features.normalization == bundle.norm_stats)) {
    throw ValidationError("features must be normalised with the model's statistics");
  }
  const std::size_t steps = features.values.frames();
  const std::size_t bins = desc.num_bins;
  const Tensor frames = transpose_to_frames(features.values);

  // Global branch.
  Tensor latent;
  if (desc.variant == ModelVariant::kBlstm) {
    const Tensor enc = lstm_forward(frames, lstm_weights(bundle, "encoder.lstm."));
    latent = fc_forward(enc, bundle.tensor("encoder.proj.weight"),
                        bundle.tensor("encoder.proj.bias"));
  } else {
    latent = fc_forward(frames, bundle.tensor("encoder.proj.weight"),
                        bundle.tensor("encoder.proj.bias"));
  }

  // Local branch: one FC per bin over [feature, latent], plus residual.
  const Tensor& bin_w = bundle.tensor("bins.weight");
  const Tensor& bin_b = bundle.tensor("bins.bias");
  Tensor mixed({steps, bins});
  for (std::size_t l = 0; l < steps; ++l) {
    const auto z = latent.row(l);
    for (std::size_t k = 0; k < bins; ++k) {
      const auto w = bin_w.row(k);
      double acc = static_cast<double>(bin_b.data()[k]) + static_cast<double>(w[0]) * frames(l, k);
      for (std::size_t j = 0; j < z.size(); ++j) {
        acc += static_cast<double>(w[j + 1]) * static_cast<double>(z[j]);
      }
      mixed(l, k) = static_cast<float>(acc + frames(l, k));
    }
  }
  const Tensor normed = layer_norm(mixed, bundle.tensor("norm.weight"), bundle.tensor("norm.bias"));

  Tensor decoded;
  if (desc.variant == ModelVariant::kBlstm) {
    decoded = blstm_forward(normed, lstm_weights(bundle, "decoder.fwd."),
                            lstm_weights(bundle, "decoder.bwd."));
  } else {
    decoded = normed;
    for (std::size_t i = 0; i < desc.attention_layers; ++i) {
      decoded = mha_forward(decoded, mha_weights(bundle, attn_prefix(i)), desc.heads,
                            desc.causal_mask);
    }
  }

  const Tensor hidden = fc_forward(decoded, bundle.tensor("fc1.weight"), bundle.tensor("fc1.bias"));
  const Tensor logits = fc_forward(hidden, bundle.tensor("fc2.weight"), bundle.tensor("fc2.bias"));

  RealGrid out(bins, steps);
  for (std::size_t l = 0; l < steps; ++l) {
    for (std::size_t k = 0; k < bins; ++k) {
      const double p = 1.0 / (1.0 + std::exp(-static_cast<double>(logits(l, k))));
      out(k, l) = std::clamp(p, kProbabilityMargin, 1.0 - kProbabilityMargin);
    }
  }
  return SppMap(std::move(out));
}

}  // namespace sppkit::nn
