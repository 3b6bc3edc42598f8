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

#include "riverecho/backends/wav.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>

namespace riverecho::backends {
namespace {

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
           static_cast<std::uint32_t>(b[at + 2]) << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
    return std::memcmp(b.data() + at, tag, 4) == 0;
}

std::string info_chunk(const std::string& comment) {
    std::string value = comment;
    value.push_back('\0');
    if (value.size() % 2 != 0) {
        value.push_back('\0');
    }
    std::string list = "INFO";
    list += "ICMT";
    put_u32(list, static_cast<std::uint32_t>(value.size()));
    list += value;
    std::string chunk = "LIST";
    put_u32(chunk, static_cast<std::uint32_t>(list.size()));
    chunk += list;
    return chunk;
}

std::optional<std::string> read_comment(std::span<const std::uint8_t> list) {
    if (list.size() < 4 || !tag_is(list, 0, "INFO")) {
        return std::nullopt;
    }
    std::size_t at = 4;
    while (at + 8 <= list.size()) {
        const auto size = get_u32(list, at + 4);
        if (at + 8 + size > list.size()) {
            throw WavError("truncated LIST entry");
        }
        if (tag_is(list, at, "ICMT")) {
            std::string value(reinterpret_cast<const char*>(list.data() + at + 8), size);
            value.erase(value.find_last_not_of('\0') + 1);
            return value;
        }
        at += 8 + size + (size % 2);
    }
    return std::nullopt;
}

} // namespace

std::string pcm_to_bytes(std::span<const std::int16_t> samples) {
    std::string out;
    out.reserve(samples.size() * 2);
    for (auto s : samples) {
        put_u16(out, static_cast<std::uint16_t>(s));
    }
    return out;
}

std::vector<std::int16_t> pcm_from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() % 2 != 0) {
        throw WavError("PCM16 payload has an odd number of bytes");
    }
    std::vector<std::int16_t> out(bytes.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::int16_t>(get_u16(bytes, 2 * i));
    }
    return out;
}

std::string encode_wav(const AudioClip& clip) {
    const auto data = pcm_to_bytes(clip.samples);
    const std::string info = clip.transcript_tag ? info_chunk(*clip.transcript_tag) : std::string{};

    std::string out = "RIFF";
    put_u32(out, static_cast<std::uint32_t>(4 + (8 + 16) + info.size() + (8 + data.size())));
    out += "WAVE";
    out += "fmt ";
    put_u32(out, 16);
    put_u16(out, 1); // PCM
    put_u16(out, 1); // mono
    put_u32(out, static_cast<std::uint32_t>(clip.sample_rate));
    put_u32(out, static_cast<std::uint32_t>(clip.sample_rate * 2));
    put_u16(out, 2);
    put_u16(out, 16);
    out += info;
    out += "data";
    put_u32(out, static_cast<std::uint32_t>(data.size()));
    out += data;
    return out;
}

AudioClip decode_wav(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
        throw WavError("not a RIFF/WAVE file");
    }
    AudioClip clip;
    bool have_fmt = false;
    bool have_data = false;
    std::size_t at = 12;
    while (at + 8 <= bytes.size()) {
        const auto size = get_u32(bytes, at + 4);
        const auto body = at + 8;
        if (body + size > bytes.size()) {
            throw WavError("truncated chunk");
        }
        const auto chunk = bytes.subspan(body, size);
        if (tag_is(bytes, at, "fmt ")) {
            if (size < 16 || get_u16(chunk, 0) != 1 || get_u16(chunk, 2) != 1 || get_u16(chunk, 14) != 16) {
                throw WavError("only PCM 16-bit mono is supported");
            }
            clip.sample_rate = static_cast<int>(get_u32(chunk, 4));
            have_fmt = true;
        } else if (tag_is(bytes, at, "LIST")) {
            if (auto comment = read_comment(chunk)) {
                clip.transcript_tag = std::move(comment);
            }
        } else if (tag_is(bytes, at, "data")) {
            clip.samples = pcm_from_bytes(chunk);
            have_data = true;
        }
        at = body + size + (size % 2);
    }
    if (!have_fmt || !have_data) {
        throw WavError("missing fmt or data chunk");
    }
    return clip;
}

void save_wav(const std::filesystem::path& path, const AudioClip& clip) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw WavError("cannot write " + path.string());
    }
    const auto bytes = encode_wav(clip);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

AudioClip load_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw WavError("cannot read " + path.string());
    }
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_wav(bytes);
}

AudioClip make_fixture_clip(const std::string& transcript, double seconds, int sample_rate) {
    AudioClip clip;
    clip.sample_rate = sample_rate;
    clip.transcript_tag = transcript;
    const auto n = static_cast<std::size_t>(std::llround(seconds * sample_rate));
    clip.samples.resize(n);
    // Seeded by the transcript so distinct fixtures have distinct fingerprints.
    std::seed_seq seed(transcript.begin(), transcript.end());
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> noise(-600, 600);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate;
        const double envelope = 0.5 + 0.5 * std::sin(2.0 * std::numbers::pi * 3.0 * t);
        const double voiced = 4000.0 * envelope * std::sin(2.0 * std::numbers::pi * 180.0 * t);
        clip.samples[i] = static_cast<std::int16_t>(std::lround(voiced) + noise(rng));
    }
    return clip;
}

} // namespace riverecho::backends
