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

#include "riverecho/pipeline/sentence_accumulator.hpp"

#include "riverecho/common/utf8.hpp"

#include <stdexcept>

namespace riverecho::pipeline {

SentenceAccumulator::SentenceAccumulator(std::u32string punctuation) : punctuation_(std::move(punctuation)) {
    if (punctuation_.empty()) {
        throw std::invalid_argument("sentence punctuation set is empty");
    }
}

bool SentenceAccumulator::is_terminal(char32_t c) const {
    return punctuation_.find(c) != std::u32string::npos;
}

std::vector<std::string> SentenceAccumulator::push(std::string_view token) {
    std::vector<std::string> done;
    for (const auto& cp : utf8::split_code_points(token)) {
        pending_ += cp;
        if (is_terminal(utf8::decode(cp).front())) {
            done.push_back(std::move(pending_));
            pending_.clear();
        }
    }
    return done;
}

std::optional<std::string> SentenceAccumulator::flush() {
    if (pending_.empty()) {
        return std::nullopt;
    }
    auto rest = std::move(pending_);
    pending_.clear();
    return rest;
}

std::vector<std::string> accumulate_sentences(std::span<const std::string> tokens, std::u32string_view punctuation) {
    SentenceAccumulator acc{std::u32string(punctuation)};
    std::vector<std::string> out;
    for (const auto& t : tokens) {
        for (auto& s : acc.push(t)) {
            out.push_back(std::move(s));
        }
    }
    if (auto rest = acc.flush()) {
        out.push_back(std::move(*rest));
    }
    return out;
}

} // namespace riverecho::pipeline
