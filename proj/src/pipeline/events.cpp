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

#include "riverecho/pipeline/events.hpp"

namespace riverecho::pipeline {
namespace {

template <typename... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <typename... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

} // namespace

std::string_view event_type(const StageEvent& event) {
    return std::visit(Overloaded{
                          [](const TranscriptFinal&) { return std::string_view("transcript"); },
                          [](const ContextReady&) { return std::string_view("context"); },
                          [](const Token&) { return std::string_view("token"); },
                          [](const Sentence&) { return std::string_view("sentence"); },
                          [](const AudioBlock&) { return std::string_view("audio"); },
                          [](const VideoFrame&) { return std::string_view("frame"); },
                          [](const MetricsReport&) { return std::string_view("metrics"); },
                          [](const End&) { return std::string_view("end"); },
                          [](const StageFailure&) { return std::string_view("error"); },
                      },
                      event);
}

std::uint64_t event_seq(const StageEvent& event) {
    return std::visit(Overloaded{
                          [](const Token& e) { return e.seq; },
                          [](const Sentence& e) { return e.seq; },
                          [](const AudioBlock& e) { return e.seq; },
                          [](const VideoFrame& e) { return e.frame_index; },
                          [](const auto&) { return std::uint64_t{0}; },
                      },
                      event);
}

} // namespace riverecho::pipeline
