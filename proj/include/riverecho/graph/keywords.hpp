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

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace riverecho::graph {

class KnowledgeGraph;

// Dictionary-driven keyword extraction. Maximal (leftmost-longest) matches of
// known entity surfaces come first; the remaining text is split on
// whitespace, punctuation and stopwords. Output is ordered and deduplicated.
class KeywordExtractor {
public:
    explicit KeywordExtractor(const std::set<std::string>& known_surfaces);
    explicit KeywordExtractor(const KnowledgeGraph& graph);

    std::vector<std::string> extract(std::string_view query) const;

private:
    std::set<std::u32string> surfaces_;
    std::size_t longest_ = 0;
};

std::vector<std::string> extract_keywords(std::string_view query, const std::set<std::string>& known_surfaces);

bool is_stopword(std::string_view word);

} // namespace riverecho::graph
