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

#include "riverecho/corpus/ingest.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <future>
#include <thread>

namespace riverecho::corpus {

std::size_t ingest_documents(std::span<const SourceDocument> docs, const Structurer& structurer,
                             const IngestOptions& options, const ChunkWriter& writer) {
    using Result = std::vector<StructuredChunk>;
    std::vector<std::promise<Result>> promises(docs.size());
    std::vector<std::future<Result>> results;
    results.reserve(docs.size());
    for (auto& p : promises) {
        results.push_back(p.get_future());
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    const auto work = [&] {
        for (std::size_t i = next++; i < docs.size(); i = next++) {
            if (failed) {
                promises[i].set_exception(std::make_exception_ptr(Error("ingestion aborted")));
                continue;
            }
            try {
                Result structured;
                for (const auto& chunk : segment_document(docs[i], options.policy)) {
                    structured.push_back(structure_chunk(chunk, docs[i], structurer));
                }
                promises[i].set_value(std::move(structured));
            } catch (...) {
                failed = true;
                promises[i].set_exception(std::current_exception());
            }
        }
    };

    const unsigned jobs = std::clamp<unsigned>(options.jobs, 1, static_cast<unsigned>(std::max<std::size_t>(docs.size(), 1)));
    std::vector<std::jthread> workers;
    for (unsigned i = 0; i < jobs; ++i) {
        workers.emplace_back(work);
    }

    // Single writer: drains results in document order.
    std::size_t written = 0;
    std::exception_ptr first_error;
    for (auto& f : results) {
        try {
            for (const auto& chunk : f.get()) {
                if (!first_error) {
                    writer(chunk);
                    ++written;
                }
            }
        } catch (...) {
            if (!first_error) {
                first_error = std::current_exception();
                failed = true;
            }
        }
    }
    workers.clear();
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return written;
}

std::vector<StructuredChunk> ingest_documents(std::span<const SourceDocument> docs, const Structurer& structurer,
                                              const IngestOptions& options) {
    std::vector<StructuredChunk> out;
    ingest_documents(docs, structurer, options, [&](const StructuredChunk& c) { out.push_back(c); });
    return out;
}

} // namespace riverecho::corpus
