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

#include <nlohmann/json.hpp>

#include <chrono>
#include <functional>
#include <string>

namespace riverecho::backends {

struct RemoteEndpoint {
    std::string base_url; // "http://host:port"
    std::chrono::milliseconds timeout{5000};
    int retries = 1;
    std::chrono::milliseconds backoff{100}; // doubled per retry
};

enum class RemoteFailure { Timeout, Unreachable, MalformedResponse };

std::string_view to_string(RemoteFailure f);

class RemoteError : public StageError {
public:
    RemoteError(std::string stage, RemoteFailure kind, const std::string& detail);
    RemoteFailure kind() const { return kind_; }

private:
    RemoteFailure kind_;
};

// JSON-over-HTTP client for one stage service. Timeout and Unreachable are
// retried `retries` times with exponential backoff; MalformedResponse is not.
class RemoteStageClient {
public:
    RemoteStageClient(std::string stage, RemoteEndpoint endpoint);

    nlohmann::json call(const std::string& path, const nlohmann::json& request) const;

    // Newline-delimited JSON response consumed incrementally. A retry is only
    // attempted when no record has been delivered yet.
    void stream(const std::string& path, const nlohmann::json& request,
                const std::function<bool(const nlohmann::json&)>& on_record, std::stop_token stop) const;

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
    RemoteEndpoint endpoint_;
};

class RemoteAsr final : public AsrBackend {
public:
    explicit RemoteAsr(RemoteEndpoint endpoint);
    std::string transcribe(const AudioClip& audio, std::stop_token stop) override;

private:
    RemoteStageClient client_;
};

class RemoteLlm final : public LlmBackend {
public:
    explicit RemoteLlm(RemoteEndpoint endpoint);
    void stream(std::string_view prompt, const TokenSink& sink, std::stop_token stop) override;

private:
    RemoteStageClient client_;
};

struct RemoteTtsVoice {
    std::string voice = "zh-CN-YunjianNeural";
    std::string rate = "-20%";
};

class RemoteTts final : public TtsBackend {
public:
    RemoteTts(RemoteEndpoint endpoint, RemoteTtsVoice voice = {}, int block_ms = 20);
    void synthesize(std::string_view sentence, int sample_rate, const AudioSink& sink, std::stop_token stop) override;

private:
    RemoteStageClient client_;
    RemoteTtsVoice voice_;
    int block_ms_;
};

class RemoteRenderer final : public RenderBackend {
public:
    RemoteRenderer(RemoteEndpoint endpoint, int fps);
    void render(std::span<const std::int16_t> block, int sample_rate, const FrameSink& sink,
                std::stop_token stop) override;

private:
    RemoteStageClient client_;
    int fps_;
    std::uint64_t samples_ = 0;
    std::uint64_t frames_ = 0;
};

// Unreachable or timed-out services surface as corpus::BackendUnavailable,
// malformed documents as corpus::SchemaViolation.
class RemoteStructurer final : public corpus::Structurer {
public:
    explicit RemoteStructurer(RemoteEndpoint endpoint);
    nlohmann::json structure(const corpus::StructureRequest& request) const override;

private:
    RemoteStageClient client_;
};

} // namespace riverecho::backends
