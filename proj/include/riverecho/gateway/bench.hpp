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
#include "riverecho/graph/knowledge_graph.hpp"
#include "riverecho/pipeline/metrics.hpp"

#include <string>
#include <vector>

namespace riverecho::gateway {

struct BenchReport {
    std::vector<pipeline::ModuleMetrics> sessions;
    pipeline::ModuleMetrics mean;
    double wall_seconds = 0.0;
};

// Runs config.bench_sessions sessions one after another, each with fresh
// backends and a spoken query clip so that every stage is exercised.
// Without configured queries, queries name the best connected entities.
BenchReport run_bench(const ServerConfig& config, const graph::KnowledgeGraph& graph);

std::vector<std::string> default_bench_queries(const graph::KnowledgeGraph& graph, std::size_t count);

// Module / Processing Metric / Processing Time rows.
std::string format_bench_table(const BenchReport& report);

} // namespace riverecho::gateway
