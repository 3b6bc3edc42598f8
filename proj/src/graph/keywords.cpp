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

#include "riverecho/graph/keywords.hpp"

#include "riverecho/common/utf8.hpp"
#include "riverecho/graph/knowledge_graph.hpp"

#include <unicode/uchar.h>

#include <algorithm>
#include <cctype>
#include <iterator>

namespace riverecho::graph {
namespace {

// Function words and question scaffolding. CJK entries also act as
// separators inside unspaced runs; ASCII entries only drop whole words.
constexpr std::u32string_view kCjkStopwords[] = {
    U"的",   U"了",   U"是",   U"在",   U"和",   U"与",   U"及",   U"或",   U"从",   U"哪里", U"哪儿",
    U"哪些", U"哪",   U"什么", U"怎么", U"怎样", U"如何", U"为什么", U"吗",  U"呢",   U"吧",   U"啊",
    U"呀",   U"请问", U"请",   U"一下", U"介绍", U"讲讲", U"说说", U"关于", U"有关", U"这个", U"那个",
    U"这",   U"那",   U"我们", U"你们", U"他们", U"我",   U"你",   U"他",   U"她",   U"它",   U"谁",
    U"有",   U"些",   U"都",   U"也",   U"么",   U"被",   U"对"};

constexpr std::string_view kAsciiStopwords[] = {
    "a",   "an",  "the", "of",  "in",   "on",    "at",   "to",    "for",  "and",
    "or",  "is",  "are", "was", "were", "what",  "where", "who",  "how",  "why",
    "which", "does", "do", "did", "about", "tell", "me",  "please", "from", "with"};

bool is_separator(char32_t c) {
    const auto cp = static_cast<UChar32>(c);
    return u_isUWhiteSpace(cp) || u_ispunct(cp) || u_hasBinaryProperty(cp, UCHAR_PATTERN_SYNTAX);
}

bool is_ascii_word(std::u32string_view w) {
    return std::all_of(w.begin(), w.end(), [](char32_t c) { return c < 0x80; });
}

std::string lower_ascii(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Longest CJK stopword starting at `pos`, 0 when none.
std::size_t stopword_at(std::u32string_view text, std::size_t pos) {
    std::size_t best = 0;
    for (auto sw : kCjkStopwords) {
        if (sw.size() > best && text.substr(pos, sw.size()) == sw) {
            best = sw.size();
        }
    }
    return best;
}

void split_residue(std::u32string_view run, std::vector<std::string>& out) {
    std::u32string word;
    const auto flush = [&] {
        if (word.empty()) {
            return;
        }
        if (is_ascii_word(word)) {
            auto w = lower_ascii(utf8::encode(word));
            if (!is_stopword(w)) {
                out.push_back(std::move(w));
            }
        } else {
            out.push_back(utf8::encode(word));
        }
        word.clear();
    };
    std::size_t i = 0;
    while (i < run.size()) {
        if (is_separator(run[i])) {
            flush();
            ++i;
            continue;
        }
        if (const auto sw = stopword_at(run, i); sw > 0) {
            flush();
            i += sw;
            continue;
        }
        word.push_back(run[i]);
        ++i;
    }
    flush();
}

} // namespace

bool is_stopword(std::string_view word) {
    if (std::find(std::begin(kAsciiStopwords), std::end(kAsciiStopwords), word) != std::end(kAsciiStopwords)) {
        return true;
    }
    const auto u = utf8::decode(word);
    return std::find(std::begin(kCjkStopwords), std::end(kCjkStopwords), std::u32string_view(u)) != std::end(kCjkStopwords);
}

KeywordExtractor::KeywordExtractor(const std::set<std::string>& known_surfaces) {
    for (const auto& s : known_surfaces) {
        auto u = utf8::decode(normalize_entity_name(s));
        if (u.empty()) {
            continue;
        }
        longest_ = std::max(longest_, u.size());
        surfaces_.insert(std::move(u));
    }
}

KeywordExtractor::KeywordExtractor(const KnowledgeGraph& graph)
    : KeywordExtractor([&] {
          std::set<std::string> surfaces;
          for (const auto& [_, e] : graph.entities()) {
              surfaces.insert(e.canonical_name);
              surfaces.insert(e.aliases.begin(), e.aliases.end());
          }
          return surfaces;
      }()) {}

std::vector<std::string> KeywordExtractor::extract(std::string_view query) const {
    const auto text = utf8::decode(normalize_entity_name(query));
    std::vector<std::string> entity_hits;
    std::vector<std::string> residue_words;

    std::size_t run_start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t match = 0;
        for (std::size_t len = std::min(longest_, text.size() - i); len > 0; --len) {
            if (surfaces_.contains(text.substr(i, len))) {
                match = len;
                break;
            }
        }
        if (match == 0) {
            ++i;
            continue;
        }
        split_residue(std::u32string_view(text).substr(run_start, i - run_start), residue_words);
        entity_hits.push_back(utf8::encode(std::u32string_view(text).substr(i, match)));
        i += match;
        run_start = i;
    }
    split_residue(std::u32string_view(text).substr(run_start), residue_words);

    std::vector<std::string> keywords;
    const auto add = [&](std::string&& w) {
        if (std::find(keywords.begin(), keywords.end(), w) == keywords.end()) {
            keywords.push_back(std::move(w));
        }
    };
    for (auto& w : entity_hits) {
        add(std::move(w));
    }
    for (auto& w : residue_words) {
        add(std::move(w));
    }
    return keywords;
}

std::vector<std::string> extract_keywords(std::string_view query, const std::set<std::string>& known_surfaces) {
    return KeywordExtractor(known_surfaces).extract(query);
}

} // namespace riverecho::graph
