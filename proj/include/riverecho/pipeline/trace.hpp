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

#include "riverecho/common/pacing.hpp"
#include "riverecho/pipeline/events.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace riverecho::pipeline {

struct StageSpan {
    std::optional<Clock::time_point> start;
    std::optional<Clock::time_point> stop;
};

struct QueueStats {
    std::string name;
    std::size_t capacity = 0;
    std::size_t high_water = 0;
    std::size_t producer_waits = 0;
};

struct TraceEntry {
    double t = 0.0; // seconds since session start
    std::string type;
    std::uint64_t seq = 0;
};

struct SessionTrace {
    Clock::time_point origin{};
    std::map<std::string, StageSpan> stages; // asr, retrieval, llm, accumulator, tts, render
    std::vector<TraceEntry> events;
    std::vector<QueueStats> queues;

    int sample_rate = 16000;
    double input_audio_seconds = 0.0;
    double asr_seconds = 0.0;
    std::optional<Clock::time_point> llm_request;
    std::optional<Clock::time_point> first_token;
    std::optional<Clock::time_point> last_token;
    std::uint64_t tokens = 0;
    std::uint64_t sentences = 0;
    std::uint64_t audio_samples = 0;
    std::uint64_t frames = 0;
    // Time spent inside the backend, excluding time blocked on downstream queues.
    double tts_busy_seconds = 0.0;
    double render_busy_seconds = 0.0;

    double output_audio_seconds() const {
        return sample_rate > 0 ? static_cast<double>(audio_samples) / sample_rate : 0.0;
    }
    double seconds_since_origin(Clock::time_point t) const { return to_seconds(t - origin); }
};

// One JSON object per line: every event {"t","type","seq"} followed by a
// {"type":"summary"} line with counts, stage spans and queue statistics.
void write_trace_ndjson(std::ostream& out, const SessionTrace& trace);

} // namespace riverecho::pipeline
