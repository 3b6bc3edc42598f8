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

#include "riverecho/graph/knowledge_graph.hpp"

#include "riverecho/common/digest.hpp"

#include <algorithm>
#include <tuple>

namespace riverecho::graph {

std::string entity_id_for(std::string_view canonical_name, EntityType type) {
    std::string key(corpus::to_string(type));
    key.push_back('\x1f');
    key.append(canonical_name);
    return content_id("ent-", key, 12);
}

DedupResult dedup_entities(std::span<const MentionRef> mentions) {
    DedupResult result;
    for (const auto& ref : mentions) {
        const auto canonical = normalize_entity_name(ref.mention.surface);
        const auto id = entity_id_for(canonical, ref.mention.type);
        auto [it, inserted] = result.entities.try_emplace(id);
        Entity& e = it->second;
        if (inserted) {
            e.entity_id = id;
            e.canonical_name = canonical;
            e.type = ref.mention.type;
        }
        e.aliases.insert(ref.mention.surface);
        e.chunk_refs.insert(ref.chunk_id);
        result.merge_map[MentionKey{ref.mention.surface, ref.mention.type}] = id;
    }
    return result;
}

IntegrityError::IntegrityError(std::string chunk_id, const std::string& detail)
    : Error("integrity error in chunk " + chunk_id + ": " + detail), chunk_id_(std::move(chunk_id)) {}

KnowledgeGraph KnowledgeGraph::from_parts(std::map<std::string, Entity> entities, std::vector<RelationEdge> edges,
                                          std::map<std::string, corpus::StructuredChunk> chunks) {
    KnowledgeGraph g;
    g.entities_ = std::move(entities);
    g.edges_ = std::move(edges);
    g.chunks_ = std::move(chunks);
    std::sort(g.edges_.begin(), g.edges_.end(), [](const RelationEdge& a, const RelationEdge& b) {
        return std::tie(a.subject_id, a.predicate, a.object_id) < std::tie(b.subject_id, b.predicate, b.object_id);
    });
    for (const auto& [id, _] : g.entities_) {
        g.adjacency_[id];
    }
    for (std::size_t i = 0; i < g.edges_.size(); ++i) {
        g.adjacency_[g.edges_[i].subject_id].insert(i);
        g.adjacency_[g.edges_[i].object_id].insert(i);
    }
    if (const auto problems = g.integrity_problems(); !problems.empty()) {
        throw IntegrityError("<graph>", problems.front());
    }
    return g;
}

const Entity* KnowledgeGraph::find_entity(const std::string& entity_id) const {
    const auto it = entities_.find(entity_id);
    return it == entities_.end() ? nullptr : &it->second;
}

const corpus::StructuredChunk* KnowledgeGraph::find_chunk(const std::string& chunk_id) const {
    const auto it = chunks_.find(chunk_id);
    return it == chunks_.end() ? nullptr : &it->second;
}

std::size_t KnowledgeGraph::degree(const std::string& entity_id) const {
    const auto it = adjacency_.find(entity_id);
    return it == adjacency_.end() ? 0 : it->second.size();
}

std::vector<std::string> KnowledgeGraph::integrity_problems() const {
    std::vector<std::string> problems;
    std::set<std::tuple<std::string, EntityType>> keys;
    for (const auto& [id, e] : entities_) {
        if (id != e.entity_id) {
            problems.push_back("entity key " + id + " does not match its id " + e.entity_id);
        }
        if (e.chunk_refs.empty()) {
            problems.push_back("entity " + id + " has no chunk references");
        }
        if (!keys.emplace(e.canonical_name, e.type).second) {
            problems.push_back("duplicate entity (" + e.canonical_name + ", " + std::string(corpus::to_string(e.type)) +
                               ")");
        }
        for (const auto& ref : e.chunk_refs) {
            if (!chunks_.contains(ref)) {
                problems.push_back("entity " + id + " cites unknown chunk " + ref);
            }
        }
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& edge = edges_[i];
        const auto label = "edge " + std::to_string(i);
        if (!entities_.contains(edge.subject_id)) {
            problems.push_back(label + " has unknown subject " + edge.subject_id);
        }
        if (!entities_.contains(edge.object_id)) {
            problems.push_back(label + " has unknown object " + edge.object_id);
        }
        if (edge.chunk_refs.empty()) {
            problems.push_back(label + " has no chunk references");
        }
        for (const auto& ref : edge.chunk_refs) {
            if (!chunks_.contains(ref)) {
                problems.push_back(label + " cites unknown chunk " + ref);
            }
        }
    }
    for (const auto& [id, indices] : adjacency_) {
        if (!entities_.contains(id)) {
            problems.push_back("adjacency lists unknown entity " + id);
        }
        for (auto i : indices) {
            if (i >= edges_.size() || (edges_[i].subject_id != id && edges_[i].object_id != id)) {
                problems.push_back("adjacency of " + id + " lists non-incident edge " + std::to_string(i));
            }
        }
    }
    return problems;
}

KnowledgeGraph build_graph(std::span<const corpus::StructuredChunk> chunks, const BuildOptions& options) {
    std::vector<const corpus::StructuredChunk*> admitted;
    for (const auto& c : chunks) {
        if (!options.accepted_only || c.status.state == corpus::ReviewState::Accepted) {
            admitted.push_back(&c);
        }
    }

    std::vector<MentionRef> mentions;
    for (const auto* c : admitted) {
        for (const auto& m : c->entities) {
            mentions.push_back(MentionRef{m, c->chunk_id});
        }
    }
    auto dedup = dedup_entities(mentions);

    std::map<std::tuple<std::string, std::string, std::string>, std::set<std::string>> edge_refs;
    for (const auto* c : admitted) {
        const auto resolve = [&](const std::string& surface) -> const std::string& {
            const auto m = std::find_if(c->entities.begin(), c->entities.end(),
                                        [&](const corpus::EntityMention& e) { return e.surface == surface; });
            if (m == c->entities.end()) {
                throw IntegrityError(c->chunk_id, "relation names undeclared entity '" + surface + "'");
            }
            return dedup.merge_map.at(MentionKey{m->surface, m->type});
        };
        for (const auto& r : c->relations) {
            if (r.predicate.empty()) {
                throw IntegrityError(c->chunk_id, "relation with empty predicate");
            }
            edge_refs[{resolve(r.subject), r.predicate, resolve(r.object)}].insert(c->chunk_id);
        }
    }

    std::vector<RelationEdge> edges;
    edges.reserve(edge_refs.size());
    for (auto& [key, refs] : edge_refs) {
        edges.push_back(RelationEdge{std::get<0>(key), std::get<1>(key), std::get<2>(key), std::move(refs)});
    }
    std::map<std::string, corpus::StructuredChunk> index;
    for (const auto* c : admitted) {
        index.emplace(c->chunk_id, *c);
    }
    return KnowledgeGraph::from_parts(std::move(dedup.entities), std::move(edges), std::move(index));
}

} // namespace riverecho::graph
