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

#include <filesystem>
#include <iosfwd>

namespace riverecho::graph {

inline constexpr const char* kGraphFormatVersion = "v1";

class CorruptGraphFile : public Error {
public:
    CorruptGraphFile(std::size_t line, const std::string& detail);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class UnsupportedVersion : public Error {
public:
    explicit UnsupportedVersion(const std::string& version);
};

// Header line, then #entities, #edges and #chunks sections with one JSON
// record per line. Output is byte-stable for a given graph.
void write_graph(std::ostream& out, const KnowledgeGraph& g);
KnowledgeGraph read_graph(std::istream& in);

// Writes to a sibling temporary file and renames it into place.
void persist_graph(const KnowledgeGraph& g, const std::filesystem::path& path);
KnowledgeGraph load_graph(const std::filesystem::path& path);

} // namespace riverecho::graph
