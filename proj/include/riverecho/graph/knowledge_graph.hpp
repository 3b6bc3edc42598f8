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

#include <compare>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace riverecho::graph {

using corpus::EntityType;

// NFC composition, Unicode whitespace trimmed and internal runs collapsed to
// a single U+0020. Idempotent.
std::string normalize_entity_name(std::string_view surface);

struct Entity {
    std::string entity_id;
    std::string canonical_name;
    EntityType type = EntityType::Term;
    std::set<std::string> aliases; // raw surfaces seen for this entity
    std::set<std::string> chunk_refs;

    bool operator==(const Entity&) const = default;
};

struct RelationEdge {
    std::string subject_id;
    std::string predicate;
    std::string object_id;
    std::set<std::string> chunk_refs;

    bool operator==(const RelationEdge&) const = default;
};

// Merge key of a mention. Keyed by type as well as surface because the same
// surface may legitimately name entities of two types.
struct MentionKey {
    std::string surface;
    EntityType type = EntityType::Term;

    auto operator<=>(const MentionKey&) const = default;
};

struct MentionRef {
    corpus::EntityMention mention;
    std::string chunk_id;
};

struct DedupResult {
    std::map<std::string, Entity> entities;
    std::map<MentionKey, std::string> merge_map; // raw (surface, type) -> entity_id
};

// Identifier derived from (type, canonical name), so ids never depend on
// input order.
std::string entity_id_for(std::string_view canonical_name, EntityType type);

DedupResult dedup_entities(std::span<const MentionRef> mentions);

class IntegrityError : public Error {
public:
    IntegrityError(std::string chunk_id, const std::string& detail);
    const std::string& chunk_id() const { return chunk_id_; }

private:
    std::string chunk_id_;
};

// Immutable once built. Safe for concurrent readers.
class KnowledgeGraph {
public:
    KnowledgeGraph() = default;

    // Sorts edges, recomputes adjacency and checks referential integrity.
    // Throws IntegrityError on dangling references.
    static KnowledgeGraph from_parts(std::map<std::string, Entity> entities, std::vector<RelationEdge> edges,
                                     std::map<std::string, corpus::StructuredChunk> chunks);

    const std::map<std::string, Entity>& entities() const { return entities_; }
    const std::vector<RelationEdge>& edges() const { return edges_; }
    const std::map<std::string, corpus::StructuredChunk>& chunks() const { return chunks_; }
    const std::map<std::string, std::set<std::size_t>>& adjacency() const { return adjacency_; }

    const Entity* find_entity(const std::string& entity_id) const;
    const corpus::StructuredChunk* find_chunk(const std::string& chunk_id) const;
    // Number of edges incident to the entity.
    std::size_t degree(const std::string& entity_id) const;

    // Human-readable descriptions of every broken invariant; empty when sound.
    std::vector<std::string> integrity_problems() const;

    bool empty() const { return entities_.empty() && edges_.empty() && chunks_.empty(); }

    bool operator==(const KnowledgeGraph&) const = default;

private:
    std::map<std::string, Entity> entities_;
    std::vector<RelationEdge> edges_;
    std::map<std::string, corpus::StructuredChunk> chunks_;
    std::map<std::string, std::set<std::size_t>> adjacency_;
};

struct BuildOptions {
    // Only chunks that passed proofreading become part of the graph.
    bool accepted_only = true;
};

KnowledgeGraph build_graph(std::span<const corpus::StructuredChunk> chunks, const BuildOptions& options = {});

} // namespace riverecho::graph
