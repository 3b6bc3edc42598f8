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

#include "riverecho/pipeline/events.hpp"
#include "riverecho/pipeline/sentence_accumulator.hpp"

#include <map>
#include <string>
#include <vector>

namespace riverecho::testing {

struct SessionExpectations {
    int sample_rate = 16000;
    int fps = 25;
    bool spoken_input = false;
    std::u32string punctuation = std::u32string(pipeline::kDefaultSentencePunctuation);
};

// Every ordering and accounting rule a finished session must satisfy.
// Empty when the event list is sound.
std::vector<std::string> session_violations(const std::vector<pipeline::StageEvent>& events,
                                            const SessionExpectations& expect = {});

std::vector<pipeline::StageEvent> without_times(const std::vector<pipeline::TimedEvent>& events);

std::string joined_tokens(const std::vector<pipeline::StageEvent>& events);
std::vector<std::string> sentences_of(const std::vector<pipeline::StageEvent>& events);
// Events split by type, each in emission order, metrics left out. Stages run
// concurrently, so only these per-type streams are reproducible run to run.
std::map<std::string, std::vector<pipeline::StageEvent>> streams_by_type(
    const std::vector<pipeline::StageEvent>& events);

std::size_t count_type(const std::vector<pipeline::StageEvent>& events, std::string_view type);

} // namespace riverecho::testing
