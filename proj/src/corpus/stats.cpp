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

#include "riverecho/corpus/stats.hpp"

#include <iomanip>
#include <sstream>

namespace riverecho::corpus {

CorpusStats corpus_stats(std::span<const StructuredChunk> chunks) {
    CorpusStats stats;
    for (auto theme : kAllThemes) {
        stats.per_theme[theme] = 0;
    }
    for (const auto& chunk : chunks) {
        ++stats.per_theme[chunk.theme];
    }
    stats.total = chunks.size();
    return stats;
}

std::string format_stats_table(const CorpusStats& stats) {
    std::ostringstream out;
    out << std::left << std::setw(30) << "Theme" << "Number of Chunks\n";
    out << std::left << std::setw(30) << "Total" << stats.total << '\n';
    for (auto theme : kAllThemes) {
        const auto it = stats.per_theme.find(theme);
        out << std::left << std::setw(30) << theme_label(theme) << (it == stats.per_theme.end() ? 0 : it->second)
            << '\n';
    }
    return out.str();
}

} // namespace riverecho::corpus
