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

#include "riverecho/graph/knowledge_graph.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace riverecho::graph {

struct RetrievalWeights {
    double entity = 2.0;
    double relation = 1.0;
};

struct ScoredChunk {
    std::string chunk_id;
    double score = 0.0;
    std::string book_title;
    std::uint32_t page_number = 1;
    std::string text;

    bool operator==(const ScoredChunk&) const = default;
};

struct MatchedEdge {
    std::string subject;
    std::string predicate;
    std::string object;

    bool operator==(const MatchedEdge&) const = default;
};

struct RetrievalContext {
    std::vector<std::string> matched_entities; // canonical names, in keyword order
    std::vector<MatchedEdge> matched_edges;     // in edge order
    std::vector<ScoredChunk> chunks;            // score desc, chunk_id asc, at most k
    std::vector<std::string> keywords_used;

    bool empty() const { return chunks.empty(); }
    bool operator==(const RetrievalContext&) const = default;
};

class InvalidK : public Error {
public:
    InvalidK() : Error("retrieval k must be positive") {}
};

class InvalidDepth : public Error {
public:
    explicit InvalidDepth(int depth) : Error("retrieval depth " + std::to_string(depth) + " is not in {0, 1, 2}") {}
};

// Dual-level retrieval.
//
// Low level: entities whose canonical name equals a keyword.
// High level: edges whose predicate equals a keyword or whose endpoint is a
// low-level match.
// Candidates are the chunk_refs of the matched entities and edges after
// `depth` rounds of expansion (add endpoints of the edge set, then every edge
// incident to the entity set). Each candidate scores
//   weights.entity * (matched entities citing it) + weights.relation * (matched edges citing it)
// where only the keyword-matched (depth 0) entities and edges count as hits.
RetrievalContext retrieve_context(const KnowledgeGraph& g, std::string_view query, std::size_t k, int depth,
                                  const RetrievalWeights& weights = {});

} // namespace riverecho::graph
