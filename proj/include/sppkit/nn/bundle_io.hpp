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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sppkit/nn/model.hpp"

namespace sppkit::nn {

/// Binary model file:
///   "SPPM" | u32 version | u32 tensor count
///   per tensor: u16 name length | UTF-8 name | u8 rank | u32 dims[rank] |
///               f32 data (little-endian, row-major)
///   footer: f64 norm mean | f64 norm std
/// Tensors are written in descriptor inventory order followed by any
/// extra tensors in name order.
std::string encode_model(const ModelBundle& bundle);

/// Parses and validates a model image. Distinct failures:
///   FormatError     bad magic or unsupported version
///   TruncatedError  data ends early (message names the tensor being read)
///   ShapeMismatch   a tensor's shape differs from the inferred architecture
///   ValidationError missing tensors, bad statistics, trailing bytes
/// Tensors not in the inventory are kept and reported through `warnings`.
ModelBundle decode_model(std::string_view bytes, std::vector<std::string>* warnings = nullptr);

void save_model(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_model(const std::filesystem::path& path,
                       std::vector<std::string>* warnings = nullptr);

}  // namespace sppkit::nn
