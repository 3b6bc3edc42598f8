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

#include "riverecho/common/error.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

namespace riverecho::backends {

struct AudioClip {
    std::vector<std::int16_t> samples;
    int sample_rate = 16000;
    // Fixture transcript carried in the WAV metadata list.
    std::optional<std::string> transcript_tag;

    double duration_seconds() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

// A failure attributable to one pipeline stage ("asr", "llm", "tts", "render", "structurer").
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& message)
        : Error(stage + ": " + message), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

class UnrecognizedAudio : public StageError {
public:
    explicit UnrecognizedAudio(const std::string& detail) : StageError("asr", "unrecognized audio: " + detail) {}
};

// Sinks return false to ask the producer to stop early.
using TokenSink = std::function<bool(std::string_view token)>;
using AudioSink = std::function<bool(std::vector<std::int16_t> block)>;
using FrameSink = std::function<bool(std::uint64_t frame_index)>;

// One-shot recognition; not streamed.
class AsrBackend {
public:
    virtual ~AsrBackend() = default;
    virtual std::string transcribe(const AudioClip& audio, std::stop_token stop) = 0;
};

// Receives the whole prompt at once and emits tokens incrementally.
class LlmBackend {
public:
    virtual ~LlmBackend() = default;
    virtual void stream(std::string_view prompt, const TokenSink& sink, std::stop_token stop) = 0;
};

// Synthesizes one sentence into PCM blocks at the requested rate.
class TtsBackend {
public:
    virtual ~TtsBackend() = default;
    virtual void synthesize(std::string_view sentence, int sample_rate, const AudioSink& sink,
                            std::stop_token stop) = 0;
};

// Audio-driven frame generation. Stateful across the blocks of one session:
// after a total of S samples it has emitted ceil(S * fps / sample_rate)
// frames with contiguous indices from 0.
class RenderBackend {
public:
    virtual ~RenderBackend() = default;
    virtual void render(std::span<const std::int16_t> block, int sample_rate, const FrameSink& sink,
                        std::stop_token stop) = 0;
};

} // namespace riverecho::backends
