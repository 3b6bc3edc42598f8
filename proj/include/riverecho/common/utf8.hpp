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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// All "character" offsets in the project are Unicode code point offsets.
namespace riverecho::utf8 {

std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);
std::string encode(char32_t cp);

std::size_t length(std::string_view text);

// One string per code point.
std::vector<std::string> split_code_points(std::string_view text);

// Code point based substring: [start, start + count).
std::string substr(std::string_view text, std::size_t start, std::size_t count);

bool is_valid(std::string_view text);

} // namespace riverecho::utf8
