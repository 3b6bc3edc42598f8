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
#include "riverecho/corpus/structure.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace riverecho::backends {

// Pacing constants of the stub backends; they reproduce the per-module
// processing times measured for the deployed system. Zero disables pacing.
struct StubPacing {
    double asr_rtf = 0.01460;    // seconds of work per second of input audio
    double llm_rate = 36.79;     // tokens per second
    double tts_rtf = 0.27448;    // seconds of work per second of output audio
    double frame_cost = 0.0039;  // seconds of work per video frame

    static StubPacing unpaced() { return {0.0, 0.0, 0.0, 0.0}; }
};

class StubAsr final : public AsrBackend {
public:
    // `fixtures` maps sha256(PCM bytes) to a transcript for untagged audio.
    explicit StubAsr(double rtf, std::map<std::string, std::string> fixtures = {});
    std::string transcribe(const AudioClip& audio, std::stop_token stop) override;

    static std::string fingerprint(const AudioClip& audio);

private:
    double rtf_;
    std::map<std::string, std::string> fixtures_;
};

struct StubLlmOptions {
    std::size_t max_citations = 2;
    std::size_t excerpt_chars = 16;
};

inline constexpr std::string_view kStubFallbackAnswer = "抱歉，我没有听清您的问题。";

// Deterministic answer: restates the query and quotes the book title, page
// and an excerpt of each distinct book found in the prompt's context records.
std::string compose_stub_answer(std::string_view prompt, const StubLlmOptions& options = {});

// Emits the composed answer one code point per token at `rate` tokens/s:
// token i (1-based) leaves at request_time + i / rate.
class StubLlm final : public LlmBackend {
public:
    StubLlm(double rate, StubLlmOptions options = {});
    void stream(std::string_view prompt, const TokenSink& sink, std::stop_token stop) override;

private:
    double rate_;
    StubLlmOptions options_;
};

struct StubTtsOptions {
    double seconds_per_char = 0.25;
    double tone_hz = 440.0;
    int block_ms = 20;
    double amplitude = 0.3;
    // Fault injection: the n-th synthesize call (1-based) throws.
    std::optional<std::size_t> fail_on_call;
};

// 440 Hz tone, seconds_per_char per code point, 20 ms blocks. Block j leaves
// at call_start + rtf * (audio seconds up to and including block j).
class StubTts final : public TtsBackend {
public:
    StubTts(double rtf, StubTtsOptions options = {});
    void synthesize(std::string_view sentence, int sample_rate, const AudioSink& sink, std::stop_token stop) override;

    static std::size_t sample_count(std::string_view sentence, int sample_rate, double seconds_per_char);

private:
    double rtf_;
    StubTtsOptions options_;
    std::size_t calls_ = 0;
};

class StubRenderer final : public RenderBackend {
public:
    StubRenderer(int fps, double frame_cost);
    void render(std::span<const std::int16_t> block, int sample_rate, const FrameSink& sink,
                std::stop_token stop) override;

    std::uint64_t frames_emitted() const { return frames_; }

    // ceil(samples * fps / sample_rate) in exact integer arithmetic.
    static std::uint64_t frames_for(std::uint64_t samples, int fps, int sample_rate);

private:
    int fps_;
    double frame_cost_;
    std::uint64_t samples_ = 0;
    std::uint64_t frames_ = 0;
};

using Lexicon = std::vector<std::pair<std::string, corpus::EntityType>>;

// Entity dictionary matching the bundled fixture corpus.
const Lexicon& default_lexicon();
// "surface<TAB>Type" per line; '#' starts a comment.
Lexicon load_lexicon(const std::filesystem::path& path);

// Rule-based structurer.
//  - entities: leftmost-longest lexicon matches, deduplicated by (surface, type)
//    in first-occurrence order, span of the first occurrence;
//  - relations: for consecutive matches inside one sentence separated by 1-4
//    non-punctuation characters, (left, gap, right);
//  - translation: the original text;
//  - summary: the first sentence, at most 30 characters.
class StubStructurer final : public corpus::Structurer {
public:
    explicit StubStructurer(Lexicon lexicon = default_lexicon());
    nlohmann::json structure(const corpus::StructureRequest& request) const override;

private:
    std::vector<std::pair<std::u32string, corpus::EntityType>> lexicon_;
    std::size_t longest_ = 0;
};

} // namespace riverecho::backends
