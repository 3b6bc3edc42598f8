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

#include "riverecho/pipeline/metrics.hpp"

#include <nlohmann/json.hpp>

#include <deque>
#include <mutex>
#include <string>
#include <vector>

namespace riverecho::gateway {

struct SessionMetricsRecord {
    std::string session_id;
    pipeline::ModuleMetrics metrics;
};

// Metrics of the most recent `retention` sessions.
class MetricsStore {
public:
    explicit MetricsStore(std::size_t retention = 100);

    void record(std::string session_id, const pipeline::ModuleMetrics& metrics);
    std::vector<SessionMetricsRecord> snapshot() const;

    // {"sessions":[{"session_id",...four fields}], "aggregate":{...}}; the
    // aggregate is omitted when no session has been recorded.
    nlohmann::json to_json() const;

private:
    std::size_t retention_;
    mutable std::mutex mutex_;
    std::deque<SessionMetricsRecord> records_;
};

} // namespace riverecho::gateway
