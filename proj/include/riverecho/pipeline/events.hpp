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
#include "riverecho/graph/retrieval.hpp"
#include "riverecho/pipeline/metrics.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace riverecho::pipeline {

struct TranscriptFinal {
    std::string text;
    bool operator==(const TranscriptFinal&) const = default;
};

struct ContextReady {
    graph::RetrievalContext context;
    bool operator==(const ContextReady&) const = default;
};

struct Token {
    std::string text;
    std::uint64_t seq = 0;
    bool operator==(const Token&) const = default;
};

struct Sentence {
    std::string text;
    std::uint64_t seq = 0;
    bool operator==(const Sentence&) const = default;
};

struct AudioBlock {
    std::vector<std::int16_t> samples;
    int sample_rate = 16000;
    std::uint64_t seq = 0;
    std::uint64_t sentence_seq = 0;
    bool operator==(const AudioBlock&) const = default;
};

struct VideoFrame {
    std::uint64_t frame_index = 0;
    double presentation_time = 0.0;
    std::uint64_t sentence_seq = 0;
    bool operator==(const VideoFrame&) const = default;
};

struct MetricsReport {
    ModuleMetrics metrics;
    bool operator==(const MetricsReport&) const = default;
};

struct End {
    bool operator==(const End&) const = default;
};

struct StageFailure {
    std::string stage;
    std::string message;
    bool operator==(const StageFailure&) const = default;
};

using StageEvent = std::variant<TranscriptFinal, ContextReady, Token, Sentence, AudioBlock, VideoFrame, MetricsReport,
                                End, StageFailure>;

struct TimedEvent {
    StageEvent event;
    Clock::time_point at;
};

// Wire type name: "transcript", "context", "token", "sentence", "audio",
// "frame", "metrics", "end" or "error".
std::string_view event_type(const StageEvent& event);

// Per-tag sequence number; 0 for tags without one.
std::uint64_t event_seq(const StageEvent& event);

} // namespace riverecho::pipeline
