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

#include "riverecho/graph/knowledge_graph.hpp"

#include "riverecho/common/utf8.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

namespace riverecho::graph {

std::string normalize_entity_name(std::string_view surface) {
    std::u32string collapsed;
    bool pending_space = false;
    for (char32_t c : utf8::decode(surface)) {
        if (u_isUWhiteSpace(static_cast<UChar32>(c))) {
            pending_space = !collapsed.empty();
            continue;
        }
        if (pending_space) {
            collapsed.push_back(U' ');
            pending_space = false;
        }
        collapsed.push_back(c);
    }

    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) {
        throw Error("ICU NFC normalizer unavailable");
    }
    const auto encoded = utf8::encode(collapsed);
    const icu::UnicodeString source = icu::UnicodeString::fromUTF8(encoded);
    const icu::UnicodeString composed = nfc->normalize(source, status);
    if (U_FAILURE(status)) {
        throw Error("NFC normalization failed");
    }
    std::string out;
    composed.toUTF8String(out);
    return out;
}

} // namespace riverecho::graph
