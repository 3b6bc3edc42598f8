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

#include "riverecho/gateway/config.hpp"
#include "riverecho/gateway/metrics_store.hpp"
#include "riverecho/gateway/ratings.hpp"
#include "riverecho/graph/knowledge_graph.hpp"

#include <cstdint>
#include <memory>

namespace riverecho::gateway {

// HTTP and WebSocket front end.
//   GET  /session  WebSocket upgrade; streams pipeline events as JSON envelopes
//   GET  /metrics  per-session module metrics and their means
//   POST /ratings  one rating object or an array of them
//   GET  /ratings  per-dimension means
//   GET  /*        files under static_dir
class Server {
public:
    Server(ServerConfig config, std::shared_ptr<const graph::KnowledgeGraph> graph);
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    // Binds and starts accepting. Port 0 picks a free port.
    void start();
    std::uint16_t port() const;

    // Closes the listener and every open connection, then joins all threads.
    void stop();

    // Blocks until stop() is called from elsewhere.
    void wait();

    MetricsStore& metrics();
    RatingStore& ratings();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace riverecho::gateway
