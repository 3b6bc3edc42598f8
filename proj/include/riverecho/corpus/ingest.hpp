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

#include "riverecho/corpus/segment.hpp"
#include "riverecho/corpus/structure.hpp"

#include <functional>
#include <span>
#include <vector>

namespace riverecho::corpus {

struct IngestOptions {
    SegmentPolicy policy;
    unsigned jobs = 1;
};

// Called once per chunk, always from a single thread and in document then
// chunk order.
using ChunkWriter = std::function<void(const StructuredChunk&)>;

// Segments and structures documents in parallel; every write goes through
// `writer` serially. The first failure is rethrown after workers stop.
std::size_t ingest_documents(std::span<const SourceDocument> docs, const Structurer& structurer,
                             const IngestOptions& options, const ChunkWriter& writer);

std::vector<StructuredChunk> ingest_documents(std::span<const SourceDocument> docs, const Structurer& structurer,
                                              const IngestOptions& options = {});

} // namespace riverecho::corpus
