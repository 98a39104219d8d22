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

#include "sppkit/nn/bundle_io.hpp"

#include <limits>
#include <set>

#include "../binary_io.hpp"
#include "sppkit/errors.hpp"

namespace sppkit::nn {
namespace {

constexpr std::string_view kMagic = "SPPM";

void write_tensor(detail::ByteWriter& out, const std::string& name, const Tensor& t) {
  if (name.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw InvalidConfig("tensor name too long: " + name);
  }
  out.u16(static_cast<std::uint16_t>(name.size()));
  out.bytes(name);
  out.u8(static_cast<std::uint8_t>(t.rank()));
  for (std::size_t d : t.shape()) out.u32(static_cast<std::uint32_t>(d));
  for (float v : t.data()) out.f32(v);
}

}  // namespace

std::string encode_model(const ModelBundle& bundle) {
  std::vector<std::string> order;
  std::set<std::string> listed;
  for (const auto& spec : bundle.descriptor.inventory()) {
    if (bundle.tensors.contains(spec.name)) {
      order.push_back(spec.name);
      listed.insert(spec.name);
    }
  }
  for (const auto& [name, _] : bundle.tensors) {
    if (!listed.contains(name)) order.push_back(name);
  }

  detail::ByteWriter out;
  out.bytes(kMagic);
  out.u32(bundle.format_version);
  out.u32(static_cast<std::uint32_t>(order.size()));
  for (const auto& name : order) write_tensor(out, name, bundle.tensors.at(name));
  out.f64(bundle.norm_stats.mean);
  out.f64(bundle.norm_stats.std);
  return out.data();
}

ModelBundle decode_model(std::string_view bytes, std::vector<std::string>* warnings) {
  detail::ByteReader in(bytes, "model file");
  const auto magic = in.bytes(4, "magic");
  if (magic != kMagic) {
    throw FormatError("not a model file: bad magic '" + std::string(magic) + "'");
  }
  ModelBundle bundle;
  bundle.format_version = in.u32("version");
  if (bundle.format_version != kModelFormatVersion) {
    throw FormatError("unsupported model format version " +
                      std::to_string(bundle.format_version));
  }
  const std::uint32_t count = in.u32("tensor count");
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::string index = "tensor #" + std::to_string(i);
    const std::uint16_t name_len = in.u16(index + " name length");
    const std::string name(in.bytes(name_len, index + " name"));
    const std::string what = "tensor '" + name + "'";
    const std::uint8_t rank = in.u8(what + " rank");
    Shape shape(rank);
    for (auto& d : shape) d = in.u32(what + " dims");
    const std::size_t numel = shape_numel(shape);
    if (numel * 4 > in.remaining()) {
      throw TruncatedError("model file is truncated while reading " + what + " data (" +
                           std::to_string(numel) + " values declared)");
    }
    std::vector<float> data(numel);
    for (float& v : data) v = in.f32(what + " data");
    if (!bundle.tensors.emplace(name, Tensor(std::move(shape), std::move(data))).second) {
      throw ValidationError("duplicate " + what + " in model file");
    }
  }
  bundle.norm_stats.mean = in.f64("normalisation mean");
  bundle.norm_stats.std = in.f64("normalisation std");
  if (!in.at_end()) throw ValidationError("model file has trailing bytes after the footer");

  bundle.descriptor = infer_descriptor(bundle.tensors);
  bundle.validate();
  if (warnings) {
    for (const auto& name : bundle.unexpected_tensors()) {
      warnings->push_back("unexpected tensor '" + name + "' ignored");
    }
  }
  return bundle;
}

void save_model(const ModelBundle& bundle, const std::filesystem::path& path) {
  bundle.validate();
  detail::write_file(path, encode_model(bundle));
}

ModelBundle load_model(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  const std::string bytes = detail::read_file(path);
  return decode_model(bytes, warnings);
}

}  // namespace sppkit::nn
