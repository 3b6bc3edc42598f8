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

#include "riverecho/gateway/metrics_store.hpp"

#include "riverecho/gateway/wire.hpp"

#include <stdexcept>

namespace riverecho::gateway {

MetricsStore::MetricsStore(std::size_t retention) : retention_(retention) {
    if (retention == 0) {
        throw std::invalid_argument("metrics retention must be >= 1");
    }
}

void MetricsStore::record(std::string session_id, const pipeline::ModuleMetrics& metrics) {
    std::lock_guard lock(mutex_);
    records_.push_back({std::move(session_id), metrics});
    while (records_.size() > retention_) {
        records_.pop_front();
    }
}

std::vector<SessionMetricsRecord> MetricsStore::snapshot() const {
    std::lock_guard lock(mutex_);
    return {records_.begin(), records_.end()};
}

nlohmann::json MetricsStore::to_json() const {
    const auto records = snapshot();
    nlohmann::json sessions = nlohmann::json::array();
    std::vector<pipeline::ModuleMetrics> all;
    for (const auto& r : records) {
        auto entry = metrics_to_json(r.metrics);
        entry["session_id"] = r.session_id;
        sessions.push_back(std::move(entry));
        all.push_back(r.metrics);
    }
    nlohmann::json doc{{"sessions", std::move(sessions)}};
    if (!all.empty()) {
        doc["aggregate"] = metrics_to_json(pipeline::mean_metrics(all));
    }
    return doc;
}

} // namespace riverecho::gateway
