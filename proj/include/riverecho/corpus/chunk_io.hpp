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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace riverecho::corpus {

inline constexpr const char* kChunkSchemaVersion = "v1";

class ChunkFileError : public Error {
public:
    ChunkFileError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Field order is fixed so that files are diffable and golden-testable.
nlohmann::ordered_json chunk_to_json(const StructuredChunk& chunk);
StructuredChunk chunk_from_json(const nlohmann::json& j);

void write_chunks(std::ostream& out, std::span<const StructuredChunk> chunks);
std::vector<StructuredChunk> read_chunks(std::istream& in);

void save_chunks(const std::filesystem::path& path, std::span<const StructuredChunk> chunks);
std::vector<StructuredChunk> load_chunks(const std::filesystem::path& path);

} // namespace riverecho::corpus
