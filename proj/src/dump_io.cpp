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

#include "sppkit/dump_io.hpp"

#include <array>
#include <cmath>

#include "binary_io.hpp"
#include "sppkit/errors.hpp"

namespace sppkit {
namespace {

constexpr std::array<DumpKind, 4> kAllKinds = {DumpKind::kFeatures, DumpKind::kSpp,
                                               DumpKind::kNoise, DumpKind::kGain};

}  // namespace

std::string_view dump_magic(DumpKind kind) {
  switch (kind) {
    case DumpKind::kFeatures: return "SPPF";
    case DumpKind::kSpp: return "SPPP";
    case DumpKind::kNoise: return "SPPN";
    case DumpKind::kGain: return "SPPG";
  }
  return "????";
}

std::string encode_dump(DumpKind kind, const RealGrid& values) {
  detail::ByteWriter out;
  out.bytes(dump_magic(kind));
  out.u32(kDumpVersion);
  out.u32(static_cast<std::uint32_t>(values.bins()));
  out.u32(static_cast<std::uint32_t>(values.frames()));
  for (double v : values.values()) out.f32(static_cast<float>(v));
  return out.data();
}

RealGrid decode_dump(std::string_view bytes, DumpKind expected, std::size_t* consumed) {
  detail::ByteReader in(bytes, std::string(dump_magic(expected)) + " dump");
  const auto magic = in.bytes(4, "magic");
  if (magic != dump_magic(expected)) {
    throw FormatError("bad dump magic '" + std::string(magic) + "', expected '" +
                      std::string(dump_magic(expected)) + "'");
  }
  const std::uint32_t version = in.u32("version");
  if (version != kDumpVersion) {
    throw FormatError("unsupported dump version " + std::to_string(version));
  }
  const std::uint32_t bins = in.u32("bin count");
  const std::uint32_t frames = in.u32("frame count");
  const std::uint64_t count = static_cast<std::uint64_t>(bins) * frames;
  if (count * 4 > in.remaining()) {
    throw TruncatedError(std::string(dump_magic(expected)) + " dump declares " +
                         std::to_string(bins) + "x" + std::to_string(frames) +
                         " values but only " + std::to_string(in.remaining()) +
                         " payload bytes follow");
  }
  RealGrid out(bins, frames);
  for (double& v : out.values()) {
    v = in.f32("value");
    if (!std::isfinite(v)) throw FormatError("dump contains non-finite values");
  }
  if (consumed) *consumed = in.position();
  return out;
}

void write_dump(const std::filesystem::path& path, DumpKind kind, const RealGrid& values) {
  detail::write_file(path, encode_dump(kind, values));
}

RealGrid read_dump(const std::filesystem::path& path, DumpKind expected) {
  const std::string bytes = detail::read_file(path);
  try {
    return decode_dump(bytes, expected);
  } catch (const TruncatedError& e) {
    throw TruncatedError(path.string() + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

DumpKind peek_dump_kind(const std::filesystem::path& path) {
  const std::string bytes = detail::read_file(path);
  if (bytes.size() < 4) throw TruncatedError(path.string() + ": too short for a dump header");
  const std::string_view magic(bytes.data(), 4);
  for (DumpKind kind : kAllKinds) {
    if (dump_magic(kind) == magic) return kind;
  }
  throw FormatError(path.string() + ": unknown dump magic '" + std::string(magic) + "'");
}

}  // namespace sppkit
