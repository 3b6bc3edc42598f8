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

#include "riverecho/backends/backend_set.hpp"

namespace riverecho::backends {

std::string_view to_string(BackendKind k) { return k == BackendKind::Stub ? "stub" : "remote"; }

void validate(const BackendConfig& config) {
    const auto& p = config.pacing;
    if (p.asr_rtf < 0 || p.llm_rate < 0 || p.tts_rtf < 0 || p.frame_cost < 0) {
        throw Error("stub pacing values must be >= 0");
    }
    if (config.fps <= 0) {
        throw Error("fps must be > 0");
    }
    if (config.tts_options.seconds_per_char <= 0 || config.tts_options.block_ms <= 0) {
        throw Error("stub TTS seconds_per_char and block_ms must be > 0");
    }
    const auto check = [](const StageSelection& s, const char* stage) {
        if (s.kind == BackendKind::Remote && s.endpoint.base_url.empty()) {
            throw Error(std::string(stage) + ": remote backend selected without an endpoint");
        }
    };
    check(config.asr, "asr");
    check(config.llm, "llm");
    check(config.tts, "tts");
    check(config.renderer, "renderer");
    check(config.structurer, "structurer");
}

BackendSet make_backend_set(const BackendConfig& config) {
    validate(config);
    BackendSet set;
    if (config.asr.kind == BackendKind::Stub) {
        set.asr = std::make_unique<StubAsr>(config.pacing.asr_rtf, config.asr_fixtures);
    } else {
        set.asr = std::make_unique<RemoteAsr>(config.asr.endpoint);
    }
    if (config.llm.kind == BackendKind::Stub) {
        set.llm = std::make_unique<StubLlm>(config.pacing.llm_rate, config.llm_options);
    } else {
        set.llm = std::make_unique<RemoteLlm>(config.llm.endpoint);
    }
    if (config.tts.kind == BackendKind::Stub) {
        set.tts = std::make_unique<StubTts>(config.pacing.tts_rtf, config.tts_options);
    } else {
        set.tts = std::make_unique<RemoteTts>(config.tts.endpoint, config.voice, config.tts_options.block_ms);
    }
    if (config.renderer.kind == BackendKind::Stub) {
        set.renderer = std::make_unique<StubRenderer>(config.fps, config.pacing.frame_cost);
    } else {
        set.renderer = std::make_unique<RemoteRenderer>(config.renderer.endpoint, config.fps);
    }
    if (config.structurer.kind == BackendKind::Stub) {
        set.structurer = std::make_shared<StubStructurer>();
    } else {
        set.structurer = std::make_shared<RemoteStructurer>(config.structurer.endpoint);
    }
    return set;
}

} // namespace riverecho::backends
