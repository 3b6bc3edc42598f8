/*
 * Copyright 2026 The RiverEcho Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "riverecho/backends/interfaces.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace riverecho::backends {

class WavError : public Error {
public:
    using Error::Error;
};

// RIFF/WAVE, PCM 16-bit mono. A transcript tag is written as the ICMT entry
// of a LIST/INFO chunk.
std::string encode_wav(const AudioClip& clip);
AudioClip decode_wav(std::span<const std::uint8_t> bytes);

void save_wav(const std::filesystem::path& path, const AudioClip& clip);
AudioClip load_wav(const std::filesystem::path& path);

// Deterministic speech-like fixture audio of the given length carrying `transcript`.
AudioClip make_fixture_clip(const std::string& transcript, double seconds, int sample_rate = 16000);

// Little-endian PCM16 byte view helpers for transport.
std::string pcm_to_bytes(std::span<const std::int16_t> samples);
std::vector<std::int16_t> pcm_from_bytes(std::span<const std::uint8_t> bytes);

} // namespace riverecho::backends
