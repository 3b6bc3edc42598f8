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

#include "riverecho/backends/stubs.hpp"

#include "riverecho/common/utf8.hpp"

#include <unicode/uchar.h>

#include <algorithm>
#include <fstream>
#include <set>

namespace riverecho::backends {
namespace {

using corpus::EntityType;

constexpr std::u32string_view kSentenceEnds = U"。！？；…!?;\n";
constexpr std::size_t kMaxPredicateChars = 4;
constexpr std::size_t kSummaryChars = 30;

struct Occurrence {
    std::size_t lexeme;
    std::size_t start;
    std::size_t end;
};

bool is_break(char32_t c) {
    const auto cp = static_cast<UChar32>(c);
    return u_ispunct(cp) || u_isUWhiteSpace(cp);
}

} // namespace

const Lexicon& default_lexicon() {
    static const Lexicon lexicon{
        {"禹", EntityType::Person},           {"大禹", EntityType::Person},
        {"鲧", EntityType::Person},           {"郦道元", EntityType::Person},
        {"潘季驯", EntityType::Person},       {"王景", EntityType::Person},
        {"贾让", EntityType::Person},         {"贾鲁", EntityType::Person},
        {"司马迁", EntityType::Person},       {"班固", EntityType::Person},
        {"汉武帝", EntityType::Person},       {"宋应星", EntityType::Person},
        {"靳辅", EntityType::Person},         {"陈潢", EntityType::Person},
        {"昆仑", EntityType::Place},          {"积石", EntityType::Place},
        {"龙门", EntityType::Place},          {"华阴", EntityType::Place},
        {"砥柱", EntityType::Place},          {"孟津", EntityType::Place},
        {"洛阳", EntityType::Place},          {"开封", EntityType::Place},
        {"瓠子", EntityType::Place},          {"壶口", EntityType::Place},
        {"河套", EntityType::Place},          {"渤海", EntityType::Place},
        {"荥阳", EntityType::Place},          {"千乘", EntityType::Place},
        {"河", EntityType::River},            {"黄河", EntityType::River},
        {"河水", EntityType::River},          {"淮河", EntityType::River},
        {"济水", EntityType::River},          {"渭水", EntityType::River},
        {"汾水", EntityType::River},          {"洛水", EntityType::River},
        {"汴河", EntityType::River},          {"夏代", EntityType::Dynasty},
        {"汉代", EntityType::Dynasty},        {"西汉", EntityType::Dynasty},
        {"东汉", EntityType::Dynasty},        {"北魏", EntityType::Dynasty},
        {"唐代", EntityType::Dynasty},        {"北宋", EntityType::Dynasty},
        {"元代", EntityType::Dynasty},        {"明代", EntityType::Dynasty},
        {"清代", EntityType::Dynasty},        {"水经注", EntityType::Work},
        {"史记", EntityType::Work},           {"汉书", EntityType::Work},
        {"禹贡", EntityType::Work},           {"河防一览", EntityType::Work},
        {"宋史", EntityType::Work},           {"天工开物", EntityType::Work},
        {"治河方略", EntityType::Work},       {"河道总督", EntityType::Institution},
        {"都水监", EntityType::Institution},  {"瓠子决口", EntityType::Event},
        {"铜瓦厢改道", EntityType::Event},    {"澶州决河", EntityType::Event},
        {"束水攻沙", EntityType::Term},       {"堤防", EntityType::Term},
        {"埽工", EntityType::Term},           {"漕运", EntityType::Term},
        {"淤田", EntityType::Term},           {"泥沙", EntityType::Term},
        {"水门", EntityType::Term},           {"河工", EntityType::Term},
    };
    return lexicon;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read lexicon " + path.string());
    }
    Lexicon lexicon;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto tab = line.find('\t');
        const auto type = tab == std::string::npos ? std::nullopt : corpus::parse_entity_type(line.substr(tab + 1));
        if (!type || tab == 0) {
            throw Error(path.string() + ":" + std::to_string(line_no) + ": expected 'surface<TAB>Type'");
        }
        lexicon.emplace_back(line.substr(0, tab), *type);
    }
    return lexicon;
}

StubStructurer::StubStructurer(Lexicon lexicon) {
    for (auto& [surface, type] : lexicon) {
        auto u = utf8::decode(surface);
        if (u.empty()) {
            continue;
        }
        longest_ = std::max(longest_, u.size());
        lexicon_.emplace_back(std::move(u), type);
    }
}

nlohmann::json StubStructurer::structure(const corpus::StructureRequest& request) const {
    const auto text = utf8::decode(request.text);

    // Leftmost-longest dictionary matching.
    std::vector<Occurrence> hits;
    for (std::size_t i = 0; i < text.size();) {
        std::optional<Occurrence> best;
        for (std::size_t k = 0; k < lexicon_.size(); ++k) {
            const auto& surface = lexicon_[k].first;
            if ((!best || surface.size() > best->end - best->start) &&
                std::u32string_view(text).substr(i, surface.size()) == surface) {
                best = Occurrence{k, i, i + surface.size()};
            }
        }
        if (best) {
            hits.push_back(*best);
            i = best->end;
        } else {
            ++i;
        }
    }

    auto entities = nlohmann::json::array();
    std::set<std::size_t> seen;
    for (const auto& h : hits) {
        if (seen.insert(h.lexeme).second) {
            entities.push_back({{"surface", utf8::encode(lexicon_[h.lexeme].first)},
                                {"type", corpus::to_string(lexicon_[h.lexeme].second)},
                                {"span", {h.start, h.end}}});
        }
    }

    const auto sentence_of = [&](std::size_t pos) {
        std::size_t s = 0;
        for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
            if (kSentenceEnds.find(text[i]) != std::u32string_view::npos) {
                ++s;
            }
        }
        return s;
    };

    auto relations = nlohmann::json::array();
    std::set<std::tuple<std::size_t, std::u32string, std::size_t>> seen_relations;
    for (std::size_t i = 0; i + 1 < hits.size(); ++i) {
        const auto& a = hits[i];
        const auto& b = hits[i + 1];
        if (a.lexeme == b.lexeme || sentence_of(a.start) != sentence_of(b.start)) {
            continue;
        }
        const auto gap = text.substr(a.end, b.start - a.end);
        if (gap.empty() || gap.size() > kMaxPredicateChars || std::any_of(gap.begin(), gap.end(), is_break)) {
            continue;
        }
        if (seen_relations.emplace(a.lexeme, gap, b.lexeme).second) {
            relations.push_back({{"subject", utf8::encode(lexicon_[a.lexeme].first)},
                                 {"predicate", utf8::encode(gap)},
                                 {"object", utf8::encode(lexicon_[b.lexeme].first)}});
        }
    }

    std::size_t first_end = 0;
    while (first_end < text.size() && kSentenceEnds.find(text[first_end]) == std::u32string_view::npos) {
        ++first_end;
    }
    const auto summary = text.substr(0, std::min({first_end, kSummaryChars, text.size()}));

    return nlohmann::json{
        {"translation", request.text},
        {"summary", utf8::encode(summary.empty() ? text.substr(0, 1) : summary)},
        {"entities", std::move(entities)},
        {"relations", std::move(relations)},
    };
}

} // namespace riverecho::backends
