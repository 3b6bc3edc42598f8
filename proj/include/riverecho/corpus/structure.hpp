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

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace riverecho::corpus {

struct StructureRequest {
    std::string chunk_id;
    std::string text;
    std::string book_title;
    std::uint32_t page_number = 1;
};

// Turns one unstructured chunk into the structured-template document:
//
//   {"translation": str, "summary": str,
//    "entities":  [{"surface": str, "type": EntityType, "span": [start, end]?}],
//    "relations": [{"subject": str, "predicate": str, "object": str}]}
//
// Implementations must be callable concurrently from ingestion workers.
class Structurer {
public:
    virtual ~Structurer() = default;
    virtual nlohmann::json structure(const StructureRequest& request) const = 0;
};

class SchemaViolation : public Error {
public:
    explicit SchemaViolation(std::vector<std::string> fields);
    const std::vector<std::string>& fields() const { return fields_; }

private:
    std::vector<std::string> fields_;
};

class BackendUnavailable : public Error {
public:
    using Error::Error;
};

// Converts a structurer document into a chunk, collecting every bad field
// before throwing SchemaViolation.
StructuredChunk parse_structured_output(const nlohmann::json& output, const UnstructuredChunk& chunk,
                                        const SourceDocument& doc);

// Result is in Draft state. Throws SchemaViolation or BackendUnavailable.
StructuredChunk structure_chunk(const UnstructuredChunk& chunk, const SourceDocument& doc,
                                const Structurer& structurer);

} // namespace riverecho::corpus
