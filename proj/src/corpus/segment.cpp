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

#include "riverecho/corpus/segment.hpp"

#include "riverecho/common/digest.hpp"
#include "riverecho/common/utf8.hpp"

namespace riverecho::corpus {

std::vector<UnstructuredChunk> segment_document(const SourceDocument& doc, const SegmentPolicy& policy) {
    validate_document(doc);
    if (policy.max_chars == 0) {
        throw Error("segment policy: max_chars must be at least 1");
    }

    const std::u32string body = utf8::decode(doc.body);
    const auto is_boundary = [&](char32_t c) { return policy.boundary_punctuation.find(c) != std::u32string::npos; };

    std::vector<UnstructuredChunk> chunks;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t end = std::min(pos + policy.max_chars, body.size());
        if (end < body.size()) {
            std::size_t cut = end;
            while (cut > pos && !is_boundary(body[cut - 1])) {
                --cut;
            }
            if (cut > pos) {
                end = cut;
            } else {
                // Unbreakable run: extend to the next boundary.
                while (end < body.size() && !is_boundary(body[end - 1])) {
                    ++end;
                }
            }
        }

        UnstructuredChunk chunk;
        chunk.doc_id = doc.doc_id;
        chunk.span = Span{pos, end};
        chunk.page_number = page_at(doc, pos);
        chunk.text = utf8::encode(std::u32string_view(body).substr(pos, end - pos));
        chunk.chunk_id = content_id("chk-", doc.doc_id + ":" + std::to_string(pos) + ":" + chunk.text);
        chunks.push_back(std::move(chunk));
        pos = end;
    }
    return chunks;
}

} // namespace riverecho::corpus
