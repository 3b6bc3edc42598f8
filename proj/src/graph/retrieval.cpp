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

#include "riverecho/graph/retrieval.hpp"

#include "riverecho/graph/keywords.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace riverecho::graph {

RetrievalContext retrieve_context(const KnowledgeGraph& g, std::string_view query, std::size_t k, int depth,
                                  const RetrievalWeights& weights) {
    if (k == 0) {
        throw InvalidK();
    }
    if (depth < 0 || depth > 2) {
        throw InvalidDepth(depth);
    }

    RetrievalContext ctx;
    ctx.keywords_used = KeywordExtractor(g).extract(query);
    if (ctx.keywords_used.empty()) {
        return ctx;
    }
    const std::set<std::string> keywords(ctx.keywords_used.begin(), ctx.keywords_used.end());

    // Low level: entities named by a keyword, reported in keyword order.
    std::set<std::string> matched_entities;
    for (const auto& kw : ctx.keywords_used) {
        for (const auto& [id, e] : g.entities()) {
            if (e.canonical_name == kw && matched_entities.insert(id).second) {
                ctx.matched_entities.push_back(e.canonical_name);
            }
        }
    }

    // High level: edges whose predicate is a keyword or that touch a matched entity.
    std::set<std::size_t> matched_edges;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const auto& edge = g.edges()[i];
        if (keywords.contains(edge.predicate) || matched_entities.contains(edge.subject_id) ||
            matched_entities.contains(edge.object_id)) {
            matched_edges.insert(i);
            ctx.matched_edges.push_back(MatchedEdge{g.entities().at(edge.subject_id).canonical_name, edge.predicate,
                                                    g.entities().at(edge.object_id).canonical_name});
        }
    }

    // Expansion through adjacency.
    std::set<std::string> entity_set = matched_entities;
    std::set<std::size_t> edge_set = matched_edges;
    for (int round = 0; round < depth; ++round) {
        for (auto i : edge_set) {
            entity_set.insert(g.edges()[i].subject_id);
            entity_set.insert(g.edges()[i].object_id);
        }
        for (const auto& id : entity_set) {
            const auto adj = g.adjacency().find(id);
            if (adj != g.adjacency().end()) {
                edge_set.insert(adj->second.begin(), adj->second.end());
            }
        }
    }

    std::map<std::string, double> scores;
    for (const auto& id : entity_set) {
        for (const auto& ref : g.entities().at(id).chunk_refs) {
            scores.try_emplace(ref, 0.0);
        }
    }
    for (auto i : edge_set) {
        for (const auto& ref : g.edges()[i].chunk_refs) {
            scores.try_emplace(ref, 0.0);
        }
    }
    for (const auto& id : matched_entities) {
        for (const auto& ref : g.entities().at(id).chunk_refs) {
            scores[ref] += weights.entity;
        }
    }
    for (auto i : matched_edges) {
        for (const auto& ref : g.edges()[i].chunk_refs) {
            scores[ref] += weights.relation;
        }
    }

    std::vector<std::pair<std::string, double>> ranked(scores.begin(), scores.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) {
            return a.second > b.second;
        }
        return a.first < b.first;
    });
    if (ranked.size() > k) {
        ranked.resize(k);
    }
    for (const auto& [id, score] : ranked) {
        const auto* chunk = g.find_chunk(id);
        ctx.chunks.push_back(ScoredChunk{id, score, chunk->basic.book_title, chunk->basic.page_number,
                                         chunk->basic.original_text});
    }
    return ctx;
}

} // namespace riverecho::graph
