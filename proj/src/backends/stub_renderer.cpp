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

#include "riverecho/backends/stubs.hpp"

#include "riverecho/common/pacing.hpp"

namespace riverecho::backends {

StubRenderer::StubRenderer(int fps, double frame_cost) : fps_(fps), frame_cost_(frame_cost) {}

std::uint64_t StubRenderer::frames_for(std::uint64_t samples, int fps, int sample_rate) {
    const auto rate = static_cast<std::uint64_t>(sample_rate);
    return (samples * static_cast<std::uint64_t>(fps) + rate - 1) / rate;
}

void StubRenderer::render(std::span<const std::int16_t> block, int sample_rate, const FrameSink& sink,
                          std::stop_token stop) {
    if (sample_rate <= 0 || fps_ <= 0) {
        throw StageError("render", "invalid sample rate or fps");
    }
    const auto start = Clock::now();
    samples_ += block.size();
    const auto target = frames_for(samples_, fps_, sample_rate);
    for (std::uint64_t j = 0; frames_ < target; ++j) {
        if (!pace_until(stop, start + seconds_to_duration(frame_cost_ * static_cast<double>(j + 1)))) {
            return;
        }
        if (!sink(frames_++)) {
            return;
        }
    }
}

} // namespace riverecho::backends
