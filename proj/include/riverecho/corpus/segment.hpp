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

#include <string>
#include <vector>

namespace riverecho::corpus {

struct SegmentPolicy {
    std::size_t max_chars = 500;
    std::u32string boundary_punctuation = U"。！？；…!?;\n";
};

// Splits a document body into ordered, non-overlapping chunks whose texts
// concatenate back to the body. A chunk ends at the last boundary character
// inside its window of max_chars code points; when the window has none, the
// chunk runs on to the next boundary (or the end of the body).
std::vector<UnstructuredChunk> segment_document(const SourceDocument& doc, const SegmentPolicy& policy = {});

} // namespace riverecho::corpus
