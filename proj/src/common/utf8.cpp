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

#include "riverecho/common/utf8.hpp"

#include <unicode/utf8.h>

#include <cstdint>

namespace riverecho::utf8 {

std::u32string decode(std::string_view text) {
    std::u32string out;
    out.reserve(text.size());
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    const auto n = static_cast<std::int32_t>(text.size());
    std::int32_t i = 0;
    while (i < n) {
        UChar32 c;
        U8_NEXT(s, i, n, c);
        out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
    }
    return out;
}

std::string encode(std::u32string_view text) {
    std::string out;
    out.reserve(text.size() * 3);
    for (char32_t cp : text) {
        out += encode(cp);
    }
    return out;
}

std::string encode(char32_t cp) {
    std::uint8_t buf[U8_MAX_LENGTH];
    std::int32_t len = 0;
    UBool error = false;
    U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
    if (error) {
        return "\xEF\xBF\xBD";
    }
    return std::string(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
}

std::size_t length(std::string_view text) {
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    const auto n = static_cast<std::int32_t>(text.size());
    std::int32_t i = 0;
    std::size_t count = 0;
    while (i < n) {
        U8_FWD_1(s, i, n);
        ++count;
    }
    return count;
}

std::vector<std::string> split_code_points(std::string_view text) {
    std::vector<std::string> out;
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    const auto n = static_cast<std::int32_t>(text.size());
    std::int32_t i = 0;
    while (i < n) {
        const std::int32_t start = i;
        U8_FWD_1(s, i, n);
        out.emplace_back(text.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(i - start)));
    }
    return out;
}

std::string substr(std::string_view text, std::size_t start, std::size_t count) {
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    const auto n = static_cast<std::int32_t>(text.size());
    std::int32_t i = 0;
    for (std::size_t k = 0; k < start && i < n; ++k) {
        U8_FWD_1(s, i, n);
    }
    const std::int32_t begin = i;
    for (std::size_t k = 0; k < count && i < n; ++k) {
        U8_FWD_1(s, i, n);
    }
    return std::string(text.substr(static_cast<std::size_t>(begin), static_cast<std::size_t>(i - begin)));
}

bool is_valid(std::string_view text) {
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    const auto n = static_cast<std::int32_t>(text.size());
    std::int32_t i = 0;
    while (i < n) {
        UChar32 c;
        U8_NEXT(s, i, n, c);
        if (c < 0) {
            return false;
        }
    }
    return true;
}

} // namespace riverecho::utf8
