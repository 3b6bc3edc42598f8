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

#include "riverecho/graph/graph_io.hpp"

#include "riverecho/corpus/chunk_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <regex>

namespace riverecho::graph {
namespace {

constexpr const char* kMagic = "riverecho-graph";

struct LineReader {
    std::istream& in;
    std::size_t line_no = 0;

    std::string next(const char* expecting) {
        std::string line;
        if (!std::getline(in, line)) {
            throw CorruptGraphFile(line_no + 1, std::string("unexpected end of file, expected ") + expecting);
        }
        ++line_no;
        return line;
    }

    nlohmann::json record(const char* expecting) {
        const auto line = next(expecting);
        try {
            return nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw CorruptGraphFile(line_no, e.what());
        }
    }
};

} // namespace

CorruptGraphFile::CorruptGraphFile(std::size_t line, const std::string& detail)
    : Error("corrupt graph file at line " + std::to_string(line) + ": " + detail), line_(line) {}

UnsupportedVersion::UnsupportedVersion(const std::string& version)
    : Error("unsupported graph file version '" + version + "'") {}

void write_graph(std::ostream& out, const KnowledgeGraph& g) {
    out << kMagic << ' ' << kGraphFormatVersion << " entities=" << g.entities().size()
        << " edges=" << g.edges().size() << " chunks=" << g.chunks().size() << '\n';
    out << "#entities\n";
    for (const auto& [id, e] : g.entities()) {
        nlohmann::ordered_json j;
        j["id"] = id;
        j["name"] = e.canonical_name;
        j["type"] = corpus::to_string(e.type);
        j["aliases"] = e.aliases;
        j["chunks"] = e.chunk_refs;
        out << j.dump() << '\n';
    }
    out << "#edges\n";
    for (const auto& edge : g.edges()) {
        nlohmann::ordered_json j;
        j["subject"] = edge.subject_id;
        j["predicate"] = edge.predicate;
        j["object"] = edge.object_id;
        j["chunks"] = edge.chunk_refs;
        out << j.dump() << '\n';
    }
    out << "#chunks\n";
    for (const auto& [_, chunk] : g.chunks()) {
        out << corpus::chunk_to_json(chunk).dump() << '\n';
    }
}

KnowledgeGraph read_graph(std::istream& in) {
    LineReader reader{in};
    const auto header = reader.next("header");
    static const std::regex header_re(R"(^(\S+) (\S+) entities=(\d+) edges=(\d+) chunks=(\d+)$)");
    std::smatch m;
    if (!std::regex_match(header, m, header_re) || m[1] != kMagic) {
        throw CorruptGraphFile(1, "malformed header");
    }
    if (m[2] != kGraphFormatVersion) {
        throw UnsupportedVersion(m[2]);
    }
    const auto n_entities = std::stoul(m[3]);
    const auto n_edges = std::stoul(m[4]);
    const auto n_chunks = std::stoul(m[5]);

    const auto expect_section = [&](const char* name) {
        const auto line = reader.next(name);
        if (line != name) {
            throw CorruptGraphFile(reader.line_no, std::string("expected section ") + name);
        }
    };

    std::map<std::string, Entity> entities;
    expect_section("#entities");
    for (std::size_t i = 0; i < n_entities; ++i) {
        const auto j = reader.record("entity record");
        try {
            Entity e;
            e.entity_id = j.at("id").get<std::string>();
            e.canonical_name = j.at("name").get<std::string>();
            const auto type = corpus::parse_entity_type(j.at("type").get<std::string>());
            if (!type) {
                throw CorruptGraphFile(reader.line_no, "unknown entity type");
            }
            e.type = *type;
            e.aliases = j.at("aliases").get<std::set<std::string>>();
            e.chunk_refs = j.at("chunks").get<std::set<std::string>>();
            const auto id = e.entity_id;
            if (!entities.emplace(id, std::move(e)).second) {
                throw CorruptGraphFile(reader.line_no, "duplicate entity id " + id);
            }
        } catch (const nlohmann::json::exception& ex) {
            throw CorruptGraphFile(reader.line_no, ex.what());
        }
    }

    std::vector<RelationEdge> edges;
    expect_section("#edges");
    for (std::size_t i = 0; i < n_edges; ++i) {
        const auto j = reader.record("edge record");
        try {
            edges.push_back(RelationEdge{j.at("subject").get<std::string>(), j.at("predicate").get<std::string>(),
                                         j.at("object").get<std::string>(),
                                         j.at("chunks").get<std::set<std::string>>()});
        } catch (const nlohmann::json::exception& ex) {
            throw CorruptGraphFile(reader.line_no, ex.what());
        }
    }

    std::map<std::string, corpus::StructuredChunk> chunks;
    expect_section("#chunks");
    for (std::size_t i = 0; i < n_chunks; ++i) {
        const auto j = reader.record("chunk record");
        try {
            auto chunk = corpus::chunk_from_json(j);
            const auto id = chunk.chunk_id;
            chunks.emplace(id, std::move(chunk));
        } catch (const nlohmann::json::exception& ex) {
            throw CorruptGraphFile(reader.line_no, ex.what());
        } catch (const CorruptGraphFile&) {
            throw;
        } catch (const Error& ex) {
            throw CorruptGraphFile(reader.line_no, ex.what());
        }
    }

    std::string trailing;
    while (std::getline(in, trailing)) {
        ++reader.line_no;
        if (!trailing.empty()) {
            throw CorruptGraphFile(reader.line_no, "unexpected content after last section");
        }
    }

    try {
        return KnowledgeGraph::from_parts(std::move(entities), std::move(edges), std::move(chunks));
    } catch (const IntegrityError& e) {
        throw CorruptGraphFile(reader.line_no, e.what());
    }
}

void persist_graph(const KnowledgeGraph& g, const std::filesystem::path& path) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
        write_graph(out, g);
        out.flush();
        if (!out) {
            throw Error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

KnowledgeGraph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    return read_graph(in);
}

} // namespace riverecho::graph
