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

#include "riverecho/graph/prompt.hpp"

#include "riverecho/common/utf8.hpp"

#include <algorithm>

namespace riverecho::graph {
namespace {

std::string single_line(std::string text) {
    std::replace(text.begin(), text.end(), '\n', ' ');
    std::replace(text.begin(), text.end(), '\r', ' ');
    return text;
}

} // namespace

std::string format_context_record(std::size_t rank, const ScoredChunk& chunk) {
    std::string record(kRecordLabel);
    record += std::to_string(rank) + "] 《" + chunk.book_title + "》第" + std::to_string(chunk.page_number) + "页\n";
    record += single_line(chunk.text);
    record += '\n';
    return record;
}

std::string format_context_prompt(const RetrievalContext& ctx, std::string_view query, std::size_t budget_chars) {
    std::string tail(kQueryLabel);
    tail += query;
    const std::size_t fixed = utf8::length(kPromptPreamble) + utf8::length(tail);
    if (fixed > budget_chars) {
        throw BudgetExceeded(fixed, budget_chars);
    }

    std::string prompt(kPromptPreamble);
    std::size_t used = fixed;
    for (std::size_t i = 0; i < ctx.chunks.size(); ++i) {
        auto record = format_context_record(i + 1, ctx.chunks[i]);
        const auto len = utf8::length(record);
        if (used + len > budget_chars) {
            break; // lower ranks are dropped, never split
        }
        used += len;
        prompt += record;
    }
    prompt += tail;
    return prompt;
}

} // namespace riverecho::graph
