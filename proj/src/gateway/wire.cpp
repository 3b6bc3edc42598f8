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

#include "riverecho/gateway/wire.hpp"

#include "riverecho/backends/wav.hpp"
#include "riverecho/common/digest.hpp"

namespace riverecho::gateway {
namespace {

using nlohmann::json;
using namespace riverecho::pipeline;

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<double> read_optional(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) {
        return std::nullopt;
    }
    if (!j[key].is_number()) {
        throw WireError(std::string("metrics field '") + key + "' is not a number");
    }
    return j[key].get<double>();
}

template <typename T>
T field(const json& payload, const char* key) {
    if (!payload.is_object() || !payload.contains(key)) {
        throw WireError(std::string("payload lacks '") + key + "'");
    }
    try {
        return payload[key].get<T>();
    } catch (const json::exception&) {
        throw WireError(std::string("payload field '") + key + "' has the wrong type");
    }
}

} // namespace

json metrics_to_json(const ModuleMetrics& m) {
    return json{{"asr_time_per_audio_second", optional_number(m.asr_time_per_audio_second)},
                {"llm_tokens_per_second", optional_number(m.llm_tokens_per_second)},
                {"tts_time_per_audio_second", optional_number(m.tts_time_per_audio_second)},
                {"frame_drive_time", optional_number(m.frame_drive_time)}};
}

ModuleMetrics metrics_from_json(const json& j) {
    if (!j.is_object()) {
        throw WireError("metrics payload is not an object");
    }
    return {read_optional(j, "asr_time_per_audio_second"), read_optional(j, "llm_tokens_per_second"),
            read_optional(j, "tts_time_per_audio_second"), read_optional(j, "frame_drive_time")};
}

json context_to_json(const graph::RetrievalContext& ctx) {
    json edges = json::array();
    for (const auto& e : ctx.matched_edges) {
        edges.push_back({{"subject", e.subject}, {"predicate", e.predicate}, {"object", e.object}});
    }
    json chunks = json::array();
    for (const auto& c : ctx.chunks) {
        chunks.push_back({{"chunk_id", c.chunk_id},
                          {"score", c.score},
                          {"book_title", c.book_title},
                          {"page_number", c.page_number},
                          {"text", c.text}});
    }
    return json{{"matched_entities", ctx.matched_entities},
                {"matched_edges", std::move(edges)},
                {"chunks", std::move(chunks)},
                {"keywords", ctx.keywords_used}};
}

graph::RetrievalContext context_from_json(const json& j) {
    graph::RetrievalContext ctx;
    ctx.matched_entities = field<std::vector<std::string>>(j, "matched_entities");
    ctx.keywords_used = field<std::vector<std::string>>(j, "keywords");
    for (const auto& e : field<json>(j, "matched_edges")) {
        ctx.matched_edges.push_back({field<std::string>(e, "subject"), field<std::string>(e, "predicate"),
                                     field<std::string>(e, "object")});
    }
    for (const auto& c : field<json>(j, "chunks")) {
        ctx.chunks.push_back({field<std::string>(c, "chunk_id"), field<double>(c, "score"),
                              field<std::string>(c, "book_title"), field<std::uint32_t>(c, "page_number"),
                              field<std::string>(c, "text")});
    }
    return ctx;
}

json encode_event(const StageEvent& event, std::uint64_t seq) {
    json payload = std::visit(
        [](const auto& e) -> json {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, TranscriptFinal>) {
                return {{"text", e.text}};
            } else if constexpr (std::is_same_v<E, ContextReady>) {
                return context_to_json(e.context);
            } else if constexpr (std::is_same_v<E, Token> || std::is_same_v<E, Sentence>) {
                return {{"text", e.text}, {"seq", e.seq}};
            } else if constexpr (std::is_same_v<E, AudioBlock>) {
                return {{"pcm_base64", base64_encode(backends::pcm_to_bytes(e.samples))},
                        {"sample_rate", e.sample_rate},
                        {"seq", e.seq},
                        {"sentence_seq", e.sentence_seq}};
            } else if constexpr (std::is_same_v<E, VideoFrame>) {
                return {{"frame_index", e.frame_index},
                        {"presentation_time", e.presentation_time},
                        {"sentence_seq", e.sentence_seq}};
            } else if constexpr (std::is_same_v<E, MetricsReport>) {
                return metrics_to_json(e.metrics);
            } else if constexpr (std::is_same_v<E, End>) {
                return json::object();
            } else {
                return {{"stage", e.stage}, {"message", e.message}};
            }
        },
        event);
    return json{{"type", event_type(event)}, {"seq", seq}, {"payload", std::move(payload)}};
}

json WireEncoder::encode(const StageEvent& event) {
    return encode_event(event, next_seq_++);
}

StageEvent decode_event(const json& envelope) {
    if (!envelope.is_object() || !envelope.contains("type") || !envelope["type"].is_string() ||
        !envelope.contains("payload")) {
        throw WireError("not an event envelope");
    }
    const auto type = envelope["type"].get<std::string>();
    const auto& p = envelope["payload"];
    if (type == "transcript") {
        return TranscriptFinal{field<std::string>(p, "text")};
    }
    if (type == "context") {
        return ContextReady{context_from_json(p)};
    }
    if (type == "token") {
        return Token{field<std::string>(p, "text"), field<std::uint64_t>(p, "seq")};
    }
    if (type == "sentence") {
        return Sentence{field<std::string>(p, "text"), field<std::uint64_t>(p, "seq")};
    }
    if (type == "audio") {
        std::vector<std::int16_t> samples;
        try {
            samples = backends::pcm_from_bytes(base64_decode(field<std::string>(p, "pcm_base64")));
        } catch (const WireError&) {
            throw;
        } catch (const Error& e) {
            throw WireError(std::string("audio payload: ") + e.what());
        }
        return AudioBlock{std::move(samples), field<int>(p, "sample_rate"), field<std::uint64_t>(p, "seq"),
                          field<std::uint64_t>(p, "sentence_seq")};
    }
    if (type == "frame") {
        return VideoFrame{field<std::uint64_t>(p, "frame_index"), field<double>(p, "presentation_time"),
                          field<std::uint64_t>(p, "sentence_seq")};
    }
    if (type == "metrics") {
        return MetricsReport{metrics_from_json(p)};
    }
    if (type == "end") {
        return End{};
    }
    if (type == "error") {
        return StageFailure{field<std::string>(p, "stage"), field<std::string>(p, "message")};
    }
    throw WireError("unknown event type '" + type + "'");
}

json hello_message() {
    return json{{"type", "hello"}, {"seq", 0}, {"payload", {{"protocol", kProtocolVersion}}}};
}

ClientMessage parse_client_message(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw WireError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw WireError("request must be a JSON object");
    }
    if (j.contains("query_text")) {
        if (!j["query_text"].is_string()) {
            throw WireError("query_text must be a string");
        }
        return QueryText{j["query_text"].get<std::string>()};
    }
    if (j.contains("audio_end")) {
        if (j["audio_end"] != true) {
            throw WireError("audio_end must be true");
        }
        return AudioEnd{};
    }
    throw WireError("request needs 'query_text' or 'audio_end'");
}

} // namespace riverecho::gateway
