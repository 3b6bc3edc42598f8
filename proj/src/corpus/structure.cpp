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

#include "riverecho/corpus/structure.hpp"

#include <numeric>

namespace riverecho::corpus {
namespace {

std::string join_fields(const std::vector<std::string>& fields) {
    return std::accumulate(fields.begin(), fields.end(), std::string{},
                           [](std::string acc, const std::string& f) { return acc.empty() ? f : acc + ", " + f; });
}

std::optional<Span> parse_span(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned()) {
        return std::nullopt;
    }
    Span s{j[0].get<std::size_t>(), j[1].get<std::size_t>()};
    if (s.end < s.start) {
        return std::nullopt;
    }
    return s;
}

} // namespace

SchemaViolation::SchemaViolation(std::vector<std::string> fields)
    : Error("structured chunk schema violation: " + join_fields(fields)), fields_(std::move(fields)) {}

StructuredChunk parse_structured_output(const nlohmann::json& output, const UnstructuredChunk& chunk,
                                        const SourceDocument& doc) {
    std::vector<std::string> bad;
    StructuredChunk result;
    result.chunk_id = chunk.chunk_id;
    result.doc_id = doc.doc_id;
    result.theme = doc.theme;
    result.period = doc.period;
    result.basic.original_text = chunk.text;
    result.basic.book_title = doc.title;
    result.basic.page_number = chunk.page_number;

    if (!output.is_object()) {
        throw SchemaViolation({"<root>"});
    }

    const auto read_string = [&](const char* key, std::string& into) {
        const auto it = output.find(key);
        if (it == output.end() || !it->is_string()) {
            bad.emplace_back(key);
            return;
        }
        into = it->get<std::string>();
    };
    read_string("translation", result.basic.translation);
    read_string("summary", result.basic.summary);

    const auto entities = output.find("entities");
    if (entities == output.end() || !entities->is_array()) {
        bad.emplace_back("entities");
    } else {
        for (std::size_t i = 0; i < entities->size(); ++i) {
            const auto& e = (*entities)[i];
            const auto prefix = "entities[" + std::to_string(i) + "].";
            EntityMention m;
            if (!e.is_object() || !e.contains("surface") || !e["surface"].is_string()) {
                bad.push_back(prefix + "surface");
                continue;
            }
            m.surface = e["surface"].get<std::string>();
            const auto type = e.contains("type") && e["type"].is_string()
                                  ? parse_entity_type(e["type"].get<std::string>())
                                  : std::nullopt;
            if (!type) {
                bad.push_back(prefix + "type");
                continue;
            }
            m.type = *type;
            if (e.contains("span") && !e["span"].is_null()) {
                m.span = parse_span(e["span"]);
                if (!m.span) {
                    bad.push_back(prefix + "span");
                    continue;
                }
            }
            result.entities.push_back(std::move(m));
        }
    }

    const auto relations = output.find("relations");
    if (relations == output.end() || !relations->is_array()) {
        bad.emplace_back("relations");
    } else {
        for (std::size_t i = 0; i < relations->size(); ++i) {
            const auto& r = (*relations)[i];
            const auto prefix = "relations[" + std::to_string(i) + "]";
            if (!r.is_object() || !r.contains("subject") || !r.contains("predicate") || !r.contains("object") ||
                !r["subject"].is_string() || !r["predicate"].is_string() || !r["object"].is_string()) {
                bad.push_back(prefix);
                continue;
            }
            result.relations.push_back(RelationMention{r["subject"].get<std::string>(),
                                                       r["predicate"].get<std::string>(),
                                                       r["object"].get<std::string>()});
        }
    }

    if (bad.empty()) {
        bad = invariant_violations(result);
    }
    if (!bad.empty()) {
        throw SchemaViolation(std::move(bad));
    }
    return result;
}

StructuredChunk structure_chunk(const UnstructuredChunk& chunk, const SourceDocument& doc,
                                const Structurer& structurer) {
    if (chunk.text.empty()) {
        throw SchemaViolation({"original_text"});
    }
    const StructureRequest request{chunk.chunk_id, chunk.text, doc.title, chunk.page_number};
    return parse_structured_output(structurer.structure(request), chunk, doc);
}

} // namespace riverecho::corpus
