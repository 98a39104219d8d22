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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "sppkit/grid.hpp"

namespace sppkit {

/// Kinds of K x L real dumps. Each shares one layout: a 16-byte header
/// (4-byte magic, u32 version, u32 K, u32 L) followed by K * L little-endian
/// f32 values in row-major order.
enum class DumpKind {
  kFeatures,  // "SPPF"
  kSpp,       // "SPPP"
  kNoise,     // "SPPN"
  kGain,      // "SPPG"
};

inline constexpr std::uint32_t kDumpVersion = 1;
inline constexpr std::size_t kDumpHeaderSize = 16;

std::string_view dump_magic(DumpKind kind);

std::string encode_dump(DumpKind kind, const RealGrid& values);

/// Decodes one dump from the front of `bytes`; `consumed` receives the
/// number of bytes used. Throws FormatError on a magic/version mismatch and
/// TruncatedError when the payload is short.
RealGrid decode_dump(std::string_view bytes, DumpKind expected,
                     std::size_t* consumed = nullptr);

void write_dump(const std::filesystem::path& path, DumpKind kind, const RealGrid& values);
RealGrid read_dump(const std::filesystem::path& path, DumpKind expected);

/// Reads the magic of a dump file without decoding it.
DumpKind peek_dump_kind(const std::filesystem::path& path);

}  // namespace sppkit
