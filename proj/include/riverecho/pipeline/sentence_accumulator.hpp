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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace riverecho::pipeline {

inline constexpr std::u32string_view kDefaultSentencePunctuation = U"。！？…!?.";

// Joins streamed tokens into sentences. A sentence is emitted as soon as a
// terminal character arrives, also when it sits inside a token; the rest of
// that token starts the next sentence.
class SentenceAccumulator {
public:
    explicit SentenceAccumulator(std::u32string punctuation = std::u32string(kDefaultSentencePunctuation));

    // Sentences completed by this token, in order.
    std::vector<std::string> push(std::string_view token);

    // Unterminated residue, if any. Resets the accumulator.
    std::optional<std::string> flush();

    bool is_terminal(char32_t c) const;

private:
    std::u32string punctuation_;
    std::string pending_;
};

std::vector<std::string> accumulate_sentences(std::span<const std::string> tokens,
                                              std::u32string_view punctuation = kDefaultSentencePunctuation);

} // namespace riverecho::pipeline
