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

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace riverecho::testing {

// Splits the joined text after every terminal character; any unterminated
// tail becomes the last piece.
std::vector<std::string> oracle_split_sentences(std::string_view joined, std::u32string_view punctuation);

// Tokens of 1-4 code points over a small alphabet mixing CJK, ASCII and the
// punctuation set (plus commas, which never terminate).
std::vector<std::string> random_token_stream(std::mt19937_64& rng, std::u32string_view punctuation);

// Empty when the accumulator output agrees with the oracle, otherwise a
// description of the first disagreement.
std::string check_accumulator_against_oracle(const std::vector<std::string>& tokens,
                                             std::u32string_view punctuation);

} // namespace riverecho::testing
