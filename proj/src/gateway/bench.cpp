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

#include "riverecho/gateway/bench.hpp"

#include "riverecho/backends/wav.hpp"
#include "riverecho/common/utf8.hpp"
#include "riverecho/pipeline/session.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace riverecho::gateway {

std::vector<std::string> default_bench_queries(const graph::KnowledgeGraph& graph, std::size_t count) {
    std::vector<const graph::Entity*> ranked;
    for (const auto& [id, e] : graph.entities()) {
        ranked.push_back(&e);
    }
    std::sort(ranked.begin(), ranked.end(), [](const graph::Entity* a, const graph::Entity* b) {
        if (a->chunk_refs.size() != b->chunk_refs.size()) {
            return a->chunk_refs.size() > b->chunk_refs.size();
        }
        return a->canonical_name < b->canonical_name;
    });
    std::vector<std::string> queries;
    for (std::size_t i = 0; i < ranked.size() && queries.size() < count; ++i) {
        queries.push_back(ranked[i]->canonical_name + "有哪些记载？");
    }
    if (queries.empty()) {
        queries.push_back("黄河从哪里发源？");
    }
    return queries;
}

BenchReport run_bench(const ServerConfig& config, const graph::KnowledgeGraph& graph) {
    const auto queries =
        config.bench_queries.empty() ? default_bench_queries(graph, config.bench_sessions) : config.bench_queries;
    BenchReport report;
    const auto start = Clock::now();
    for (std::size_t i = 0; i < config.bench_sessions; ++i) {
        const auto& query = queries[i % queries.size()];
        // About as long as the question would take to speak.
        const double seconds = std::max(1.0, 0.25 * static_cast<double>(utf8::length(query)));
        auto clip = backends::make_fixture_clip(query, seconds, config.pipeline.sample_rate);
        auto set = backends::make_backend_set(config.backends);
        pipeline::SessionTrace trace;
        const auto events = pipeline::run_session(std::move(clip), set, graph, config.pipeline, &trace);
        for (const auto& e : events) {
            if (const auto* failure = std::get_if<pipeline::StageFailure>(&e.event)) {
                throw Error("bench session " + std::to_string(i + 1) + " failed in " + failure->stage + ": " +
                            failure->message);
            }
        }
        report.sessions.push_back(pipeline::compute_available_metrics(trace));
    }
    report.wall_seconds = to_seconds(Clock::now() - start);
    report.mean = pipeline::mean_metrics(report.sessions);
    return report;
}

namespace {

std::string fixed(const std::optional<double>& v, int digits, const char* unit) {
    if (!v) {
        return "n/a";
    }
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << *v << ' ' << unit;
    return out.str();
}

} // namespace

std::string format_bench_table(const BenchReport& report) {
    struct Row {
        const char* module;
        const char* metric;
        std::string value;
    };
    const auto& m = report.mean;
    const Row rows[] = {
        {"Module", "Processing Metric", "Processing Time"},
        {"ASR", "Time required to recognize 1s audio", fixed(m.asr_time_per_audio_second, 5, "s")},
        {"LLM (including RAG)", "Tokens generated per second", fixed(m.llm_tokens_per_second, 2, "tokens/s")},
        {"TTS", "Time required to synthesize 1s audio", fixed(m.tts_time_per_audio_second, 5, "s")},
        {"Talking-head rendering", "Time required to drive one frame", fixed(m.frame_drive_time, 4, "s")},
    };
    std::ostringstream out;
    for (const auto& r : rows) {
        out << std::left << std::setw(24) << r.module << std::setw(40) << r.metric << r.value << '\n';
    }
    out << "sessions: " << report.sessions.size() << ", wall time: " << std::fixed << std::setprecision(1)
        << report.wall_seconds << " s\n";
    return out.str();
}

} // namespace riverecho::gateway
