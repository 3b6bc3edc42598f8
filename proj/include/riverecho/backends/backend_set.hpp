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

#include "riverecho/backends/remote.hpp"
#include "riverecho/backends/stubs.hpp"

#include <map>
#include <memory>
#include <string>

namespace riverecho::backends {

enum class BackendKind { Stub, Remote };

std::string_view to_string(BackendKind k);

struct StageSelection {
    BackendKind kind = BackendKind::Stub;
    RemoteEndpoint endpoint;
};

struct BackendConfig {
    StageSelection asr;
    StageSelection llm;
    StageSelection tts;
    StageSelection renderer;
    StageSelection structurer;
    StubPacing pacing;
    StubLlmOptions llm_options;
    StubTtsOptions tts_options;
    RemoteTtsVoice voice;
    int fps = 25;
    std::map<std::string, std::string> asr_fixtures;
};

// Exactly one implementation per stage. Instances are per session.
struct BackendSet {
    std::unique_ptr<AsrBackend> asr;
    std::unique_ptr<LlmBackend> llm;
    std::unique_ptr<TtsBackend> tts;
    std::unique_ptr<RenderBackend> renderer;
    std::shared_ptr<const corpus::Structurer> structurer;
};

// Throws riverecho::Error when a pacing value is negative or a remote stage
// lacks an endpoint.
void validate(const BackendConfig& config);

BackendSet make_backend_set(const BackendConfig& config);

} // namespace riverecho::backends
