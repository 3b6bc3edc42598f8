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

#include "riverecho/backends/backend_set.hpp"
#include "riverecho/graph/knowledge_graph.hpp"
#include "riverecho/pipeline/bounded_queue.hpp"
#include "riverecho/pipeline/events.hpp"
#include "riverecho/pipeline/sentence_accumulator.hpp"
#include "riverecho/pipeline/trace.hpp"

#include <atomic>
#include <memory>
#include <string>
#include <thread>
#include <variant>

namespace riverecho::pipeline {

struct PipelineConfig {
    std::u32string sentence_punctuation = std::u32string(kDefaultSentencePunctuation);
    int sample_rate = 16000;
    int target_fps = 25;
    std::size_t queue_capacity = 64;
    std::size_t retrieval_k = 5;
    int retrieval_depth = 1;
    std::size_t prompt_budget_chars = 4000;
    // Capacity of the merged event stream handed to the consumer.
    std::size_t output_capacity = 256;
};

// Throws riverecho::Error naming the offending field.
void validate(const PipelineConfig& config);

using SessionInput = std::variant<backends::AudioClip, std::string>;

// One streaming dialogue turn. Stage workers start in the constructor and
// publish into a single ordered event stream consumed with next(). The
// backends must outlive the session and serve only this session.
class Session {
public:
    Session(SessionInput input, backends::BackendSet& backends, const graph::KnowledgeGraph& graph,
            PipelineConfig config = {});
    ~Session();

    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;

    // Blocks for the next event. Empty after End has been delivered.
    std::optional<TimedEvent> next();

    // Stops all stages; the stream then ends with Error("session", "cancelled") and End.
    void cancel();

    // Complete once End has been delivered.
    const SessionTrace& trace() const;

private:
    struct State;
    std::unique_ptr<State> state_;
};

// Runs a session to completion and returns every event.
std::vector<TimedEvent> run_session(SessionInput input, backends::BackendSet& backends,
                                    const graph::KnowledgeGraph& graph, const PipelineConfig& config = {},
                                    SessionTrace* trace = nullptr);

// Wall time of each stage executed alone, one after another, on the same
// input. The backends must be fresh.
struct SequentialTimings {
    double asr = 0.0;
    double retrieval = 0.0;
    double llm = 0.0;
    double accumulator = 0.0;
    double tts = 0.0;
    double render = 0.0;
    double total() const { return asr + retrieval + llm + accumulator + tts + render; }
};

SequentialTimings run_stages_sequentially(const SessionInput& input, backends::BackendSet& backends,
                                          const graph::KnowledgeGraph& graph, const PipelineConfig& config = {});

} // namespace riverecho::pipeline
