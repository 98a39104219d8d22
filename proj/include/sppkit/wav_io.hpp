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

#include "sppkit/audio.hpp"

namespace sppkit {

enum class WavEncoding { kPcm16, kFloat32 };

struct WavFile {
  AudioBuffer audio;
  WavEncoding encoding = WavEncoding::kPcm16;
};

/// Decodes a RIFF/WAVE image. Only mono 16 kHz PCM16 or IEEE float32 is
/// accepted; anything else raises FormatError with the offending field.
WavFile decode_wav(std::string_view bytes);
std::string encode_wav(const AudioBuffer& audio, WavEncoding encoding);

WavFile read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const AudioBuffer& audio,
               WavEncoding encoding = WavEncoding::kFloat32);

}  // namespace sppkit
