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

#include "riverecho/corpus/types.hpp"

#include <map>
#include <span>
#include <string>

namespace riverecho::corpus {

struct CorpusStats {
    std::map<Theme, std::size_t> per_theme; // every theme present, zero allowed
    std::size_t total = 0;
};

CorpusStats corpus_stats(std::span<const StructuredChunk> chunks);

// Total row first, then one row per theme in declaration order.
std::string format_stats_table(const CorpusStats& stats);

} // namespace riverecho::corpus
