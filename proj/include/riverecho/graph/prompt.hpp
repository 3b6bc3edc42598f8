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

#include "riverecho/graph/retrieval.hpp"

#include <string>
#include <string_view>

namespace riverecho::graph {

inline constexpr std::string_view kPromptPreamble =
    "你是黄河文化讲解员。请依据下列资料回答用户的问题，引用资料时注明书名。\n";
inline constexpr std::string_view kRecordLabel = "[资料";
inline constexpr std::string_view kQueryLabel = "问题：";

class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::size_t needed, std::size_t budget)
        : Error("prompt budget of " + std::to_string(budget) + " characters cannot hold the query (needs " +
                std::to_string(needed) + ")") {}
};

// Layout:
//   <preamble>
//   [资料1] 《book_title》第N页
//   <chunk text on one line>
//   ...
//   问题：<query>
//
// Chunks are kept in rank order and dropped from the lowest rank up until the
// prompt fits in budget_chars code points; a record is never split.
std::string format_context_prompt(const RetrievalContext& ctx, std::string_view query, std::size_t budget_chars);

// One record as laid out above, including its trailing newline.
std::string format_context_record(std::size_t rank, const ScoredChunk& chunk);

} // namespace riverecho::graph
