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

#include "riverecho/pipeline/metrics.hpp"

#include "riverecho/pipeline/trace.hpp"

namespace riverecho::pipeline {
namespace {

std::optional<double> ratio(double num, double den) {
    if (!(den > 0.0)) {
        return std::nullopt;
    }
    return num / den;
}

} // namespace

ModuleMetrics compute_available_metrics(const SessionTrace& trace) {
    ModuleMetrics m;
    m.asr_time_per_audio_second = ratio(trace.asr_seconds, trace.input_audio_seconds);
    if (trace.tokens > 0 && trace.llm_request && trace.last_token) {
        m.llm_tokens_per_second =
            ratio(static_cast<double>(trace.tokens), to_seconds(*trace.last_token - *trace.llm_request));
    }
    m.tts_time_per_audio_second = ratio(trace.tts_busy_seconds, trace.output_audio_seconds());
    m.frame_drive_time = ratio(trace.render_busy_seconds, static_cast<double>(trace.frames));
    return m;
}

ModuleMetrics compute_module_metrics(const SessionTrace& trace) {
    const auto m = compute_available_metrics(trace);
    if (!m.asr_time_per_audio_second) {
        throw MetricUndefined("asr_time_per_audio_second");
    }
    if (!m.llm_tokens_per_second) {
        throw MetricUndefined("llm_tokens_per_second");
    }
    if (!m.tts_time_per_audio_second) {
        throw MetricUndefined("tts_time_per_audio_second");
    }
    if (!m.frame_drive_time) {
        throw MetricUndefined("frame_drive_time");
    }
    return m;
}

ModuleMetrics mean_metrics(const std::vector<ModuleMetrics>& sessions) {
    const auto mean = [&](std::optional<double> ModuleMetrics::*field) -> std::optional<double> {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& s : sessions) {
            if (const auto& v = s.*field) {
                sum += *v;
                ++n;
            }
        }
        if (n == 0) {
            return std::nullopt;
        }
        return sum / static_cast<double>(n);
    };
    return {mean(&ModuleMetrics::asr_time_per_audio_second), mean(&ModuleMetrics::llm_tokens_per_second),
            mean(&ModuleMetrics::tts_time_per_audio_second), mean(&ModuleMetrics::frame_drive_time)};
}

} // namespace riverecho::pipeline
