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

#include "riverecho/common/error.hpp"

#include <optional>
#include <string>
#include <vector>

namespace riverecho::pipeline {

struct SessionTrace;

// Per-module processing times. A field is empty when its denominator was
// zero for the session (for example no input audio on a text query).
struct ModuleMetrics {
    std::optional<double> asr_time_per_audio_second;
    std::optional<double> llm_tokens_per_second;
    std::optional<double> tts_time_per_audio_second;
    std::optional<double> frame_drive_time;

    bool operator==(const ModuleMetrics&) const = default;
};

class MetricUndefined : public Error {
public:
    explicit MetricUndefined(std::string field)
        : Error("metric undefined (zero denominator): " + field), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Throws MetricUndefined for the first field whose denominator is zero.
ModuleMetrics compute_module_metrics(const SessionTrace& trace);

// Same formulas; undefined fields are left empty.
ModuleMetrics compute_available_metrics(const SessionTrace& trace);

// Arithmetic mean per field over the sessions that define it.
ModuleMetrics mean_metrics(const std::vector<ModuleMetrics>& sessions);

} // namespace riverecho::pipeline
