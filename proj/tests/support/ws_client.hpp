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

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace riverecho::testing {

// Minimal blocking WebSocket client for talking to the gateway in tests.
class WsClient {
public:
    WsClient(const std::string& host, std::uint16_t port, const std::string& path = "/session",
             const std::string& origin = {});
    ~WsClient();

    void send_text(const std::string& text);
    void send_binary(const std::string& bytes);

    // Next JSON message; empty once the server closed the connection.
    std::optional<nlohmann::json> read();

    // Messages up to and including the next "end" envelope.
    std::vector<nlohmann::json> read_response();

    void close();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace riverecho::testing
