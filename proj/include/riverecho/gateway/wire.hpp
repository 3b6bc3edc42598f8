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

#include "riverecho/pipeline/events.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace riverecho::gateway {

inline constexpr std::string_view kProtocolVersion = "v1";

class WireError : public Error {
public:
    using Error::Error;
};

// Envelope {"type", "seq", "payload"}. seq counts from 0 within one logical
// response and resets for the next request on the same connection.
class WireEncoder {
public:
    nlohmann::json encode(const pipeline::StageEvent& event);
    void reset() { next_seq_ = 0; }

private:
    std::uint64_t next_seq_ = 0;
};

nlohmann::json encode_event(const pipeline::StageEvent& event, std::uint64_t seq);

// Inverse of encode_event. Throws WireError on unknown types or bad payloads.
pipeline::StageEvent decode_event(const nlohmann::json& envelope);

// First message on every connection: {"type":"hello","seq":0,"payload":{"protocol":"v1"}}.
nlohmann::json hello_message();

nlohmann::json metrics_to_json(const pipeline::ModuleMetrics& m);
pipeline::ModuleMetrics metrics_from_json(const nlohmann::json& j);

nlohmann::json context_to_json(const graph::RetrievalContext& ctx);
graph::RetrievalContext context_from_json(const nlohmann::json& j);

// Client to server text messages.
struct QueryText {
    std::string text;
};
struct AudioEnd {};
using ClientMessage = std::variant<QueryText, AudioEnd>;

// Accepts {"query_text": "..."} or {"audio_end": true}. Throws WireError.
ClientMessage parse_client_message(std::string_view text);

} // namespace riverecho::gateway
