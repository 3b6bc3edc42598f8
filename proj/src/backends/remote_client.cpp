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

#include <httplib.h>

#include <thread>

namespace riverecho::backends {
namespace {

RemoteFailure classify(httplib::Error error) {
    switch (error) {
    case httplib::Error::ConnectionTimeout:
    case httplib::Error::Read:
    case httplib::Error::Write:
        return RemoteFailure::Timeout;
    default:
        return RemoteFailure::Unreachable;
    }
}

httplib::Client make_client(const RemoteEndpoint& endpoint) {
    httplib::Client client(endpoint.base_url);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(endpoint.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    return client;
}

} // namespace

std::string_view to_string(RemoteFailure f) {
    switch (f) {
    case RemoteFailure::Timeout:
        return "Timeout";
    case RemoteFailure::Unreachable:
        return "Unreachable";
    case RemoteFailure::MalformedResponse:
        return "MalformedResponse";
    }
    return "?";
}

RemoteError::RemoteError(std::string stage, RemoteFailure kind, const std::string& detail)
    : StageError(std::move(stage), std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

RemoteStageClient::RemoteStageClient(std::string stage, RemoteEndpoint endpoint)
    : stage_(std::move(stage)), endpoint_(std::move(endpoint)) {
    if (endpoint_.base_url.empty()) {
        throw Error(stage_ + ": remote endpoint is not configured");
    }
}

nlohmann::json RemoteStageClient::call(const std::string& path, const nlohmann::json& request) const {
    const auto body = request.dump();
    auto backoff = endpoint_.backoff;
    for (int attempt = 0;; ++attempt) {
        auto client = make_client(endpoint_);
        auto res = client.Post(path, body, "application/json");
        if (!res) {
            const auto kind = classify(res.error());
            if (attempt < endpoint_.retries) {
                std::this_thread::sleep_for(backoff);
                backoff *= 2;
                continue;
            }
            throw RemoteError(stage_, kind, endpoint_.base_url + path + ": " + httplib::to_string(res.error()));
        }
        if (res->status != 200) {
            throw RemoteError(stage_, RemoteFailure::MalformedResponse, "HTTP status " + std::to_string(res->status));
        }
        try {
            return nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
            throw RemoteError(stage_, RemoteFailure::MalformedResponse, e.what());
        }
    }
}

void RemoteStageClient::stream(const std::string& path, const nlohmann::json& request,
                               const std::function<bool(const nlohmann::json&)>& on_record,
                               std::stop_token stop) const {
    const auto body = request.dump();
    auto backoff = endpoint_.backoff;
    for (int attempt = 0;; ++attempt) {
        std::string pending;
        std::size_t delivered = 0;
        bool consumer_stopped = false;
        std::optional<std::string> malformed;

        httplib::Request req;
        req.method = "POST";
        req.path = path;
        req.body = body;
        req.set_header("Content-Type", "application/json");
        req.set_header("Accept", "application/x-ndjson");
        req.content_receiver = [&](const char* data, std::size_t len, std::uint64_t, std::uint64_t) {
            pending.append(data, len);
            for (auto nl = pending.find('\n'); nl != std::string::npos; nl = pending.find('\n')) {
                const auto line = pending.substr(0, nl);
                pending.erase(0, nl + 1);
                if (line.empty()) {
                    continue;
                }
                nlohmann::json record;
                try {
                    record = nlohmann::json::parse(line);
                } catch (const nlohmann::json::exception& e) {
                    malformed = e.what();
                    return false;
                }
                ++delivered;
                if (stop.stop_requested() || !on_record(record)) {
                    consumer_stopped = true;
                    return false;
                }
            }
            return true;
        };

        auto client = make_client(endpoint_);
        httplib::Response res;
        httplib::Error error = httplib::Error::Success;
        const bool ok = client.send(req, res, error);
        if (malformed) {
            throw RemoteError(stage_, RemoteFailure::MalformedResponse, *malformed);
        }
        if (consumer_stopped) {
            return;
        }
        if (!ok) {
            const auto kind = classify(error);
            if (delivered == 0 && attempt < endpoint_.retries) {
                std::this_thread::sleep_for(backoff);
                backoff *= 2;
                continue;
            }
            throw RemoteError(stage_, kind, endpoint_.base_url + path + ": " + httplib::to_string(error));
        }
        if (res.status != 200) {
            throw RemoteError(stage_, RemoteFailure::MalformedResponse, "HTTP status " + std::to_string(res.status));
        }
        if (!pending.empty()) {
            try {
                if (!on_record(nlohmann::json::parse(pending))) {
                    return;
                }
            } catch (const nlohmann::json::exception& e) {
                throw RemoteError(stage_, RemoteFailure::MalformedResponse, e.what());
            }
        }
        return;
    }
}

} // namespace riverecho::backends
