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

#include "riverecho/common/pacing.hpp"
#include "riverecho/common/utf8.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace riverecho::backends {

StubTts::StubTts(double rtf, StubTtsOptions options) : rtf_(rtf), options_(options) {}

std::size_t StubTts::sample_count(std::string_view sentence, int sample_rate, double seconds_per_char) {
    const auto chars = static_cast<double>(utf8::length(sentence));
    return static_cast<std::size_t>(std::llround(chars * seconds_per_char * sample_rate));
}

void StubTts::synthesize(std::string_view sentence, int sample_rate, const AudioSink& sink, std::stop_token stop) {
    ++calls_;
    if (options_.fail_on_call && *options_.fail_on_call == calls_) {
        throw StageError("tts", "injected failure on sentence " + std::to_string(calls_));
    }
    if (sentence.empty()) {
        throw StageError("tts", "empty sentence");
    }
    if (sample_rate <= 0) {
        throw StageError("tts", "invalid sample rate");
    }

    const auto start = Clock::now();
    const auto total = sample_count(sentence, sample_rate, options_.seconds_per_char);
    const auto block = std::max<std::size_t>(1, static_cast<std::size_t>(sample_rate) * options_.block_ms / 1000);
    const double step = 2.0 * std::numbers::pi * options_.tone_hz / sample_rate;
    const double peak = options_.amplitude * 32767.0;

    for (std::size_t offset = 0; offset < total; offset += block) {
        const auto n = std::min(block, total - offset);
        std::vector<std::int16_t> samples(n);
        for (std::size_t i = 0; i < n; ++i) {
            samples[i] = static_cast<std::int16_t>(std::lround(peak * std::sin(step * static_cast<double>(offset + i))));
        }
        const double produced = static_cast<double>(offset + n) / sample_rate;
        if (!pace_until(stop, start + seconds_to_duration(rtf_ * produced))) {
            return;
        }
        if (!sink(std::move(samples))) {
            return;
        }
    }
}

} // namespace riverecho::backends
