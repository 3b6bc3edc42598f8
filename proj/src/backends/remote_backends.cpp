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

#include "riverecho/backends/remote.hpp"

#include "riverecho/backends/wav.hpp"
#include "riverecho/common/digest.hpp"

#include <algorithm>

namespace riverecho::backends {
namespace {

std::string require_string(const nlohmann::json& j, const char* key, const std::string& stage) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_string()) {
        throw RemoteError(stage, RemoteFailure::MalformedResponse, std::string("missing string field '") + key + "'");
    }
    return j[key].get<std::string>();
}

std::vector<std::int16_t> decode_pcm(const std::string& b64, const std::string& stage) {
    try {
        return pcm_from_bytes(base64_decode(b64));
    } catch (const Error& e) {
        throw RemoteError(stage, RemoteFailure::MalformedResponse, e.what());
    }
}

} // namespace

RemoteAsr::RemoteAsr(RemoteEndpoint endpoint) : client_("asr", std::move(endpoint)) {}

std::string RemoteAsr::transcribe(const AudioClip& audio, std::stop_token) {
    if (audio.samples.empty()) {
        throw StageError("asr", "empty audio");
    }
    const nlohmann::json request{{"sample_rate", audio.sample_rate},
                                 {"pcm_base64", base64_encode(pcm_to_bytes(audio.samples))}};
    return require_string(client_.call("/v1/asr", request), "text", "asr");
}

RemoteLlm::RemoteLlm(RemoteEndpoint endpoint) : client_("llm", std::move(endpoint)) {}

void RemoteLlm::stream(std::string_view prompt, const TokenSink& sink, std::stop_token stop) {
    const nlohmann::json request{{"prompt", std::string(prompt)}};
    client_.stream(
        "/v1/llm/stream", request,
        [&](const nlohmann::json& record) {
            if (record.is_object() && record.value("done", false)) {
                return false;
            }
            return sink(require_string(record, "token", "llm"));
        },
        stop);
}

RemoteTts::RemoteTts(RemoteEndpoint endpoint, RemoteTtsVoice voice, int block_ms)
    : client_("tts", std::move(endpoint)), voice_(std::move(voice)), block_ms_(block_ms) {}

void RemoteTts::synthesize(std::string_view sentence, int sample_rate, const AudioSink& sink, std::stop_token stop) {
    const nlohmann::json request{{"text", std::string(sentence)},
                                 {"sample_rate", sample_rate},
                                 {"voice", voice_.voice},
                                 {"rate", voice_.rate}};
    const auto response = client_.call("/v1/tts", request);
    if (!response.is_object() || !response.contains("sample_rate") || !response["sample_rate"].is_number_integer() ||
        response["sample_rate"].get<int>() != sample_rate) {
        throw RemoteError("tts", RemoteFailure::MalformedResponse, "sample_rate missing or mismatched");
    }
    const auto pcm = decode_pcm(require_string(response, "pcm_base64", "tts"), "tts");
    const auto block = std::max<std::size_t>(1, static_cast<std::size_t>(sample_rate) * block_ms_ / 1000);
    for (std::size_t offset = 0; offset < pcm.size(); offset += block) {
        if (stop.stop_requested()) {
            return;
        }
        const auto end = std::min(pcm.size(), offset + block);
        if (!sink(std::vector<std::int16_t>(pcm.begin() + static_cast<std::ptrdiff_t>(offset),
                                            pcm.begin() + static_cast<std::ptrdiff_t>(end)))) {
            return;
        }
    }
}

RemoteRenderer::RemoteRenderer(RemoteEndpoint endpoint, int fps) : client_("render", std::move(endpoint)), fps_(fps) {}

void RemoteRenderer::render(std::span<const std::int16_t> block, int sample_rate, const FrameSink& sink,
                            std::stop_token stop) {
    samples_ += block.size();
    const auto rate = static_cast<std::uint64_t>(sample_rate);
    const auto target = (samples_ * static_cast<std::uint64_t>(fps_) + rate - 1) / rate;
    const auto wanted = target - frames_;
    const nlohmann::json request{{"pcm_base64", base64_encode(pcm_to_bytes(block))},
                                 {"sample_rate", sample_rate},
                                 {"fps", fps_},
                                 {"first_frame", frames_},
                                 {"frame_count", wanted}};
    const auto response = client_.call("/v1/render", request);
    if (!response.is_object() || !response.contains("rendered") || !response["rendered"].is_number_unsigned() ||
        response["rendered"].get<std::uint64_t>() != wanted) {
        throw RemoteError("render", RemoteFailure::MalformedResponse, "rendered frame count mismatch");
    }
    while (frames_ < target) {
        if (stop.stop_requested() || !sink(frames_++)) {
            return;
        }
    }
}

RemoteStructurer::RemoteStructurer(RemoteEndpoint endpoint) : client_("structurer", std::move(endpoint)) {}

nlohmann::json RemoteStructurer::structure(const corpus::StructureRequest& request) const {
    const nlohmann::json body{{"chunk_id", request.chunk_id},
                              {"text", request.text},
                              {"book_title", request.book_title},
                              {"page_number", request.page_number}};
    try {
        return client_.call("/v1/structure", body);
    } catch (const RemoteError& e) {
        if (e.kind() == RemoteFailure::MalformedResponse) {
            throw corpus::SchemaViolation({"<response>"});
        }
        throw corpus::BackendUnavailable(e.what());
    }
}

} // namespace riverecho::backends
