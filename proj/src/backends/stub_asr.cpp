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

#include "riverecho/backends/stubs.hpp"

#include "riverecho/backends/wav.hpp"
#include "riverecho/common/digest.hpp"
#include "riverecho/common/pacing.hpp"

namespace riverecho::backends {

StubAsr::StubAsr(double rtf, std::map<std::string, std::string> fixtures)
    : rtf_(rtf), fixtures_(std::move(fixtures)) {}

std::string StubAsr::fingerprint(const AudioClip& audio) {
    return sha256_hex(pcm_to_bytes(audio.samples));
}

std::string StubAsr::transcribe(const AudioClip& audio, std::stop_token stop) {
    if (audio.samples.empty()) {
        throw StageError("asr", "empty audio");
    }
    const auto start = Clock::now();

    std::string transcript;
    if (audio.transcript_tag) {
        transcript = *audio.transcript_tag;
    } else if (const auto it = fixtures_.find(fingerprint(audio)); it != fixtures_.end()) {
        transcript = it->second;
    } else {
        throw UnrecognizedAudio("no transcript tag and no registered fixture");
    }

    if (!pace_until(stop, start + seconds_to_duration(rtf_ * audio.duration_seconds()))) {
        throw StageError("asr", "cancelled");
    }
    return transcript;
}

} // namespace riverecho::backends
