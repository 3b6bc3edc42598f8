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

#include "riverecho/pipeline/trace.hpp"

#include <nlohmann/json.hpp>

namespace riverecho::pipeline {

void write_trace_ndjson(std::ostream& out, const SessionTrace& trace) {
    for (const auto& e : trace.events) {
        nlohmann::ordered_json line{{"t", e.t}, {"type", e.type}, {"seq", e.seq}};
        out << line.dump() << '\n';
    }
    nlohmann::ordered_json stages = nlohmann::ordered_json::object();
    for (const auto& [name, span] : trace.stages) {
        nlohmann::ordered_json s = nlohmann::ordered_json::object();
        if (span.start) {
            s["start"] = trace.seconds_since_origin(*span.start);
        }
        if (span.stop) {
            s["stop"] = trace.seconds_since_origin(*span.stop);
        }
        stages[name] = std::move(s);
    }
    nlohmann::ordered_json queues = nlohmann::ordered_json::array();
    for (const auto& q : trace.queues) {
        queues.push_back({{"name", q.name},
                          {"capacity", q.capacity},
                          {"high_water", q.high_water},
                          {"producer_waits", q.producer_waits}});
    }
    nlohmann::ordered_json summary{{"type", "summary"},
                                   {"tokens", trace.tokens},
                                   {"sentences", trace.sentences},
                                   {"audio_seconds", trace.output_audio_seconds()},
                                   {"frames", trace.frames},
                                   {"input_audio_seconds", trace.input_audio_seconds},
                                   {"stages", std::move(stages)},
                                   {"queues", std::move(queues)}};
    out << summary.dump() << '\n';
}

} // namespace riverecho::pipeline
