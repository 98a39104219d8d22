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

#include "sppkit/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "binary_io.hpp"
#include "sppkit/errors.hpp"

namespace sppkit {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
};

}  // namespace

WavFile decode_wav(std::string_view bytes) {
  detail::ByteReader in(bytes, "WAV file");
  if (in.bytes(4, "RIFF tag") != "RIFF") throw FormatError("not a RIFF file");
  in.u32("RIFF size");
  if (in.bytes(4, "WAVE tag") != "WAVE") throw FormatError("RIFF file is not WAVE");

  std::optional<FmtChunk> fmt;
  std::optional<std::string_view> data;
  while (in.remaining() >= 8 && !data) {
    const auto id = in.bytes(4, "chunk id");
    const std::uint32_t size = in.u32("chunk size");
    if (id == "fmt ") {
      detail::ByteReader chunk(in.bytes(size, "fmt chunk"), "fmt chunk");
      FmtChunk f;
      f.format = chunk.u16("format tag");
      f.channels = chunk.u16("channel count");
      f.sample_rate = chunk.u32("sample rate");
      chunk.u32("byte rate");
      chunk.u16("block align");
      f.bits = chunk.u16("bits per sample");
      if (f.format == kFormatExtensible) {
        chunk.u16("extension size");
        chunk.u16("valid bits");
        chunk.u32("channel mask");
        f.format = chunk.u16("sub-format");
      }
      fmt = f;
    } else if (id == "data") {
      // Tolerate writers that leave a bogus size on a streamed data chunk.
      data = in.bytes(std::min<std::size_t>(size, in.remaining()), "data chunk");
    } else {
      in.skip(std::min<std::size_t>(size, in.remaining()), "chunk body");
    }
    if (size % 2 == 1 && in.remaining() > 0) in.skip(1, "chunk padding");
  }
  if (!fmt) throw FormatError("WAV file has no fmt chunk");
  if (!data) throw FormatError("WAV file has no data chunk");
  if (fmt->channels != 1) {
    throw FormatError("only mono WAV is supported, got " +
                      std::to_string(fmt->channels) + " channels");
  }
  if (fmt->sample_rate != static_cast<std::uint32_t>(kSampleRate)) {
    throw FormatError("only 16000 Hz WAV is supported, got " +
                      std::to_string(fmt->sample_rate) + " Hz (no resampling)");
  }

  WavFile out;
  out.audio.sample_rate = kSampleRate;
  detail::ByteReader samples(*data, "WAV data");
  if (fmt->format == kFormatPcm && fmt->bits == 16) {
    out.encoding = WavEncoding::kPcm16;
    out.audio.samples.resize(data->size() / 2);
    for (double& s : out.audio.samples) s = samples.i16("sample") / 32768.0;
  } else if (fmt->format == kFormatFloat && fmt->bits == 32) {
    out.encoding = WavEncoding::kFloat32;
    out.audio.samples.resize(data->size() / 4);
    for (double& s : out.audio.samples) s = samples.f32("sample");
  } else {
    throw FormatError("unsupported WAV encoding: format tag " +
                      std::to_string(fmt->format) + ", " + std::to_string(fmt->bits) +
                      " bits (expected PCM16 or float32)");
  }
  return out;
}

std::string encode_wav(const AudioBuffer& audio, WavEncoding encoding) {
  const bool pcm = encoding == WavEncoding::kPcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint16_t block = bits / 8;
  const auto data_size = static_cast<std::uint32_t>(audio.samples.size() * block);

  detail::ByteWriter out;
  out.bytes("RIFF");
  out.u32(36 + data_size);
  out.bytes("WAVE");
  out.bytes("fmt ");
  out.u32(16);
  out.u16(pcm ? kFormatPcm : kFormatFloat);
  out.u16(1);
  out.u32(static_cast<std::uint32_t>(audio.sample_rate));
  out.u32(static_cast<std::uint32_t>(audio.sample_rate) * block);
  out.u16(block);
  out.u16(bits);
  out.bytes("data");
  out.u32(data_size);
  for (double s : audio.samples) {
    if (pcm) {
      const double scaled = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
      out.i16(static_cast<std::int16_t>(scaled));
    } else {
      out.f32(static_cast<float>(s));
    }
  }
  return out.data();
}

WavFile read_wav(const std::filesystem::path& path) {
  const std::string bytes = detail::read_file(path);
  try {
    return decode_wav(bytes);
  } catch (const TruncatedError& e) {
    throw TruncatedError(path.string() + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& audio,
               WavEncoding encoding) {
  detail::write_file(path, encode_wav(audio, encoding));
}

}  // namespace sppkit
