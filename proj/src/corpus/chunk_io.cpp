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

#include "riverecho/corpus/chunk_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace riverecho::corpus {
namespace {

nlohmann::ordered_json span_json(const std::optional<Span>& s) {
    if (!s) {
        return nullptr;
    }
    return nlohmann::ordered_json::array({s->start, s->end});
}

std::optional<Span> span_from(const nlohmann::json& j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return Span{j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()};
}

template <typename E>
E require_enum(std::optional<E> value, const std::string& field, const std::string& raw) {
    if (!value) {
        throw Error("unknown " + field + " '" + raw + "'");
    }
    return *value;
}

} // namespace

ChunkFileError::ChunkFileError(std::size_t line, const std::string& what)
    : Error("chunk file line " + std::to_string(line) + ": " + what), line_(line) {}

nlohmann::ordered_json chunk_to_json(const StructuredChunk& chunk) {
    nlohmann::ordered_json j;
    j["schema"] = kChunkSchemaVersion;
    j["chunk_id"] = chunk.chunk_id;
    j["doc_id"] = chunk.doc_id;
    j["theme"] = to_string(chunk.theme);
    j["period"] = to_string(chunk.period);
    j["basic"] = {
        {"original_text", chunk.basic.original_text},
        {"translation", chunk.basic.translation},
        {"summary", chunk.basic.summary},
        {"book_title", chunk.basic.book_title},
        {"page_number", chunk.basic.page_number},
    };
    auto entities = nlohmann::ordered_json::array();
    for (const auto& e : chunk.entities) {
        entities.push_back({{"surface", e.surface}, {"type", to_string(e.type)}, {"span", span_json(e.span)}});
    }
    j["entities"] = std::move(entities);
    auto relations = nlohmann::ordered_json::array();
    for (const auto& r : chunk.relations) {
        relations.push_back({{"subject", r.subject}, {"predicate", r.predicate}, {"object", r.object}});
    }
    j["relations"] = std::move(relations);
    auto annotations = nlohmann::ordered_json::array();
    for (const auto& a : chunk.status.annotations) {
        annotations.push_back({{"category", to_string(a.category)}, {"note", a.note}, {"span", span_json(a.span)}});
    }
    auto history = nlohmann::ordered_json::array();
    for (const auto& h : chunk.status.history) {
        history.push_back({{"state", to_string(h.state)}, {"reviewer", h.reviewer_id}, {"timestamp", h.timestamp}});
    }
    j["status"] = {
        {"state", to_string(chunk.status.state)},
        {"annotations", std::move(annotations)},
        {"history", std::move(history)},
    };
    return j;
}

StructuredChunk chunk_from_json(const nlohmann::json& j) {
    const auto version = j.at("schema").get<std::string>();
    if (version != kChunkSchemaVersion) {
        throw Error("unsupported chunk schema '" + version + "'");
    }
    StructuredChunk c;
    c.chunk_id = j.at("chunk_id").get<std::string>();
    c.doc_id = j.at("doc_id").get<std::string>();
    const auto theme = j.at("theme").get<std::string>();
    c.theme = require_enum(parse_theme(theme), "theme", theme);
    const auto period = j.at("period").get<std::string>();
    c.period = require_enum(parse_period(period), "period", period);

    const auto& basic = j.at("basic");
    c.basic.original_text = basic.at("original_text").get<std::string>();
    c.basic.translation = basic.at("translation").get<std::string>();
    c.basic.summary = basic.at("summary").get<std::string>();
    c.basic.book_title = basic.at("book_title").get<std::string>();
    c.basic.page_number = basic.at("page_number").get<std::uint32_t>();

    for (const auto& e : j.at("entities")) {
        const auto type = e.at("type").get<std::string>();
        c.entities.push_back(EntityMention{e.at("surface").get<std::string>(),
                                           require_enum(parse_entity_type(type), "entity type", type),
                                           span_from(e.at("span"))});
    }
    for (const auto& r : j.at("relations")) {
        c.relations.push_back(RelationMention{r.at("subject").get<std::string>(), r.at("predicate").get<std::string>(),
                                              r.at("object").get<std::string>()});
    }
    const auto& status = j.at("status");
    const auto state = status.at("state").get<std::string>();
    c.status.state = require_enum(parse_review_state(state), "review state", state);
    for (const auto& a : status.at("annotations")) {
        const auto category = a.at("category").get<std::string>();
        c.status.annotations.push_back(
            ErrorAnnotation{require_enum(parse_error_category(category), "error category", category),
                            a.at("note").get<std::string>(), span_from(a.at("span"))});
    }
    for (const auto& h : status.at("history")) {
        const auto hs = h.at("state").get<std::string>();
        c.status.history.push_back(ReviewEvent{require_enum(parse_review_state(hs), "review state", hs),
                                               h.at("reviewer").get<std::string>(),
                                               h.at("timestamp").get<std::string>()});
    }
    return c;
}

void write_chunks(std::ostream& out, std::span<const StructuredChunk> chunks) {
    for (const auto& c : chunks) {
        out << chunk_to_json(c).dump() << '\n';
    }
}

std::vector<StructuredChunk> read_chunks(std::istream& in) {
    std::vector<StructuredChunk> chunks;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        try {
            chunks.push_back(chunk_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw ChunkFileError(line_no, e.what());
        } catch (const Error& e) {
            throw ChunkFileError(line_no, e.what());
        }
    }
    return chunks;
}

void save_chunks(const std::filesystem::path& path, std::span<const StructuredChunk> chunks) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    write_chunks(out, chunks);
}

std::vector<StructuredChunk> load_chunks(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    return read_chunks(in);
}

} // namespace riverecho::corpus
