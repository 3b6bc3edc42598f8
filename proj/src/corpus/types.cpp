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

#include "riverecho/corpus/types.hpp"

#include "riverecho/common/digest.hpp"
#include "riverecho/common/utf8.hpp"

#include <algorithm>
#include <utility>

namespace riverecho::corpus {
namespace {

template <typename E, std::size_t N>
using NameTable = std::array<std::pair<E, std::string_view>, N>;

constexpr NameTable<Period, 6> kPeriodNames{{
    {Period::PreQin, "PreQin"},
    {Period::Han, "Han"},
    {Period::WeiJinNorthSouth, "WeiJinNorthSouth"},
    {Period::TangSong, "TangSong"},
    {Period::MingQing, "MingQing"},
    {Period::Contemporary, "Contemporary"},
}};

constexpr NameTable<Theme, 8> kThemeNames{{
    {Theme::RiverGovernance, "RiverGovernance"},
    {Theme::TechnologyEngineering, "TechnologyEngineering"},
    {Theme::NaturalKnowledge, "NaturalKnowledge"},
    {Theme::SocioEconomic, "SocioEconomic"},
    {Theme::CulturalHeritage, "CulturalHeritage"},
    {Theme::HistoricalNarratives, "HistoricalNarratives"},
    {Theme::DisastersImpacts, "DisastersImpacts"},
    {Theme::Interdisciplinary, "Interdisciplinary"},
}};

constexpr NameTable<Theme, 8> kThemeLabels{{
    {Theme::RiverGovernance, "River governance"},
    {Theme::TechnologyEngineering, "Technology and engineering"},
    {Theme::NaturalKnowledge, "Natural knowledge"},
    {Theme::SocioEconomic, "Socio-economic aspects"},
    {Theme::CulturalHeritage, "Cultural heritage"},
    {Theme::HistoricalNarratives, "Historical narratives"},
    {Theme::DisastersImpacts, "Disasters and their impacts"},
    {Theme::Interdisciplinary, "Interdisciplinary topics"},
}};

constexpr NameTable<EntityType, 8> kEntityTypeNames{{
    {EntityType::Person, "Person"},
    {EntityType::Place, "Place"},
    {EntityType::River, "River"},
    {EntityType::Dynasty, "Dynasty"},
    {EntityType::Work, "Work"},
    {EntityType::Institution, "Institution"},
    {EntityType::Event, "Event"},
    {EntityType::Term, "Term"},
}};

constexpr NameTable<ReviewState, 6> kReviewStateNames{{
    {ReviewState::Draft, "Draft"},
    {ReviewState::Sampled, "Sampled"},
    {ReviewState::Stage1Annotated, "Stage1Annotated"},
    {ReviewState::Stage2Verified, "Stage2Verified"},
    {ReviewState::Accepted, "Accepted"},
    {ReviewState::Returned, "Returned"},
}};

constexpr NameTable<ErrorCategory, 3> kErrorCategoryNames{{
    {ErrorCategory::IncorrectTranslation, "IncorrectTranslation"},
    {ErrorCategory::Overgeneralization, "Overgeneralization"},
    {ErrorCategory::ExcessiveSupplementation, "ExcessiveSupplementation"},
}};

template <typename E, std::size_t N>
std::string_view lookup_name(const NameTable<E, N>& table, E value) {
    for (const auto& [e, name] : table) {
        if (e == value) {
            return name;
        }
    }
    return "?";
}

template <typename E, std::size_t N>
std::optional<E> lookup_value(const NameTable<E, N>& table, std::string_view name) {
    for (const auto& [e, n] : table) {
        if (n == name) {
            return e;
        }
    }
    return std::nullopt;
}

} // namespace

std::string_view to_string(Period p) { return lookup_name(kPeriodNames, p); }
std::string_view to_string(Theme t) { return lookup_name(kThemeNames, t); }
std::string_view to_string(EntityType t) { return lookup_name(kEntityTypeNames, t); }
std::string_view to_string(ReviewState s) { return lookup_name(kReviewStateNames, s); }
std::string_view to_string(ErrorCategory c) { return lookup_name(kErrorCategoryNames, c); }
std::string_view theme_label(Theme t) { return lookup_name(kThemeLabels, t); }

std::optional<Period> parse_period(std::string_view s) { return lookup_value(kPeriodNames, s); }
std::optional<Theme> parse_theme(std::string_view s) { return lookup_value(kThemeNames, s); }
std::optional<EntityType> parse_entity_type(std::string_view s) { return lookup_value(kEntityTypeNames, s); }
std::optional<ReviewState> parse_review_state(std::string_view s) { return lookup_value(kReviewStateNames, s); }
std::optional<ErrorCategory> parse_error_category(std::string_view s) {
    return lookup_value(kErrorCategoryNames, s);
}

std::string document_id(std::string_view title, std::string_view body) {
    std::string content;
    content.reserve(title.size() + body.size() + 1);
    content.append(title).push_back('\x1f');
    content.append(body);
    return content_id("doc-", content);
}

std::uint32_t page_at(const SourceDocument& doc, std::size_t offset) {
    const auto it = std::upper_bound(doc.page_breaks.begin(), doc.page_breaks.end(), offset);
    return static_cast<std::uint32_t>(1 + (it - doc.page_breaks.begin()));
}

std::vector<std::string> invariant_violations(const StructuredChunk& chunk) {
    std::vector<std::string> bad;
    if (chunk.basic.original_text.empty()) {
        bad.emplace_back("original_text");
    }
    if (chunk.basic.book_title.empty()) {
        bad.emplace_back("book_title");
    }
    if (chunk.basic.page_number == 0) {
        bad.emplace_back("page_number");
    }
    const auto combined = utf8::length(chunk.basic.original_text) + utf8::length(chunk.basic.translation);
    if (!chunk.basic.original_text.empty() && utf8::length(chunk.basic.summary) >= combined) {
        bad.emplace_back("summary");
    }
    for (std::size_t i = 0; i < chunk.entities.size(); ++i) {
        if (chunk.entities[i].surface.empty()) {
            bad.push_back("entities[" + std::to_string(i) + "].surface");
        }
    }
    const auto declared = [&](const std::string& surface) {
        return std::any_of(chunk.entities.begin(), chunk.entities.end(),
                           [&](const EntityMention& m) { return m.surface == surface; });
    };
    for (std::size_t i = 0; i < chunk.relations.size(); ++i) {
        const auto& r = chunk.relations[i];
        const auto prefix = "relations[" + std::to_string(i) + "].";
        if (!declared(r.subject)) {
            bad.push_back(prefix + "subject");
        }
        if (r.predicate.empty()) {
            bad.push_back(prefix + "predicate");
        }
        if (!declared(r.object)) {
            bad.push_back(prefix + "object");
        }
    }
    return bad;
}

void validate_document(const SourceDocument& doc) {
    if (doc.body.empty()) {
        throw EmptyDocument(doc.doc_id);
    }
    if (doc.title.empty()) {
        throw InvalidDocument("document '" + doc.doc_id + "' has no title");
    }
    if (!utf8::is_valid(doc.body)) {
        throw InvalidDocument("document '" + doc.doc_id + "' body is not valid UTF-8");
    }
    const auto length = utf8::length(doc.body);
    std::size_t previous = 0;
    for (auto b : doc.page_breaks) {
        if (b <= previous || b >= length) {
            throw InvalidDocument("document '" + doc.doc_id + "' page break " + std::to_string(b) +
                                  " is not strictly increasing inside the body");
        }
        previous = b;
    }
}

} // namespace riverecho::corpus
