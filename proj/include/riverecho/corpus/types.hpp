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

#include "riverecho/common/error.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace riverecho::corpus {

enum class Period { PreQin, Han, WeiJinNorthSouth, TangSong, MingQing, Contemporary };

enum class Theme {
    RiverGovernance,
    TechnologyEngineering,
    NaturalKnowledge,
    SocioEconomic,
    CulturalHeritage,
    HistoricalNarratives,
    DisastersImpacts,
    Interdisciplinary,
};

enum class EntityType { Person, Place, River, Dynasty, Work, Institution, Event, Term };

enum class ReviewState { Draft, Sampled, Stage1Annotated, Stage2Verified, Accepted, Returned };

enum class ErrorCategory { IncorrectTranslation, Overgeneralization, ExcessiveSupplementation };

inline constexpr std::array kAllPeriods{Period::PreQin,   Period::Han,      Period::WeiJinNorthSouth,
                                        Period::TangSong, Period::MingQing, Period::Contemporary};

inline constexpr std::array kAllThemes{Theme::RiverGovernance,      Theme::TechnologyEngineering,
                                       Theme::NaturalKnowledge,     Theme::SocioEconomic,
                                       Theme::CulturalHeritage,     Theme::HistoricalNarratives,
                                       Theme::DisastersImpacts,     Theme::Interdisciplinary};

inline constexpr std::array kAllEntityTypes{EntityType::Person, EntityType::Place,       EntityType::River,
                                            EntityType::Dynasty, EntityType::Work,       EntityType::Institution,
                                            EntityType::Event,   EntityType::Term};

inline constexpr std::array kAllReviewStates{ReviewState::Draft,          ReviewState::Sampled,
                                             ReviewState::Stage1Annotated, ReviewState::Stage2Verified,
                                             ReviewState::Accepted,       ReviewState::Returned};

inline constexpr std::array kAllErrorCategories{ErrorCategory::IncorrectTranslation,
                                                ErrorCategory::Overgeneralization,
                                                ErrorCategory::ExcessiveSupplementation};

std::string_view to_string(Period p);
std::string_view to_string(Theme t);
std::string_view to_string(EntityType t);
std::string_view to_string(ReviewState s);
std::string_view to_string(ErrorCategory c);

// Human-readable theme label as printed in corpus statistics tables.
std::string_view theme_label(Theme t);

std::optional<Period> parse_period(std::string_view s);
std::optional<Theme> parse_theme(std::string_view s);
std::optional<EntityType> parse_entity_type(std::string_view s);
std::optional<ReviewState> parse_review_state(std::string_view s);
std::optional<ErrorCategory> parse_error_category(std::string_view s);

// Half-open range of code point offsets.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - start; }
    bool operator==(const Span&) const = default;
};

struct SourceDocument {
    std::string doc_id;
    std::string title;
    Period period = Period::PreQin;
    Theme theme = Theme::RiverGovernance;
    std::string body;
    // Code point offsets at which a new page begins (page 1 starts at 0).
    std::vector<std::size_t> page_breaks;
};

// Content-hash identifier for a document; ingestion of identical content is idempotent.
std::string document_id(std::string_view title, std::string_view body);

// Page number (1-based) of the given code point offset.
std::uint32_t page_at(const SourceDocument& doc, std::size_t offset);

struct UnstructuredChunk {
    std::string chunk_id;
    std::string doc_id;
    std::uint32_t page_number = 1;
    Span span;
    std::string text;

    bool operator==(const UnstructuredChunk&) const = default;
};

struct EntityMention {
    std::string surface;
    EntityType type = EntityType::Term;
    std::optional<Span> span;

    bool operator==(const EntityMention&) const = default;
};

struct RelationMention {
    std::string subject;
    std::string predicate;
    std::string object;

    bool operator==(const RelationMention&) const = default;
};

struct ErrorAnnotation {
    ErrorCategory category = ErrorCategory::IncorrectTranslation;
    std::string note;
    std::optional<Span> span;

    bool operator==(const ErrorAnnotation&) const = default;
};

struct ReviewEvent {
    ReviewState state = ReviewState::Draft;
    std::string reviewer_id;
    std::string timestamp;

    bool operator==(const ReviewEvent&) const = default;
};

struct ReviewStatus {
    ReviewState state = ReviewState::Draft;
    std::vector<ErrorAnnotation> annotations;
    std::vector<ReviewEvent> history;

    bool operator==(const ReviewStatus&) const = default;
};

struct BasicInfo {
    std::string original_text;
    std::string translation;
    std::string summary;
    std::string book_title;
    std::uint32_t page_number = 1;

    bool operator==(const BasicInfo&) const = default;
};

// Annotated text unit: basic information, entities and relations, plus its
// proofreading status. Theme and period are carried over from the source
// document so corpus statistics can be computed from chunks alone.
struct StructuredChunk {
    std::string chunk_id;
    std::string doc_id;
    Theme theme = Theme::RiverGovernance;
    Period period = Period::PreQin;
    BasicInfo basic;
    std::vector<EntityMention> entities;
    std::vector<RelationMention> relations;
    ReviewStatus status;

    bool operator==(const StructuredChunk&) const = default;
};

// Names of the fields that break a StructuredChunk invariant; empty when valid.
std::vector<std::string> invariant_violations(const StructuredChunk& chunk);

class InvalidDocument : public Error {
public:
    using Error::Error;
};

class EmptyDocument : public InvalidDocument {
public:
    explicit EmptyDocument(const std::string& doc_id)
        : InvalidDocument("document '" + doc_id + "' has an empty body") {}
};

// Throws EmptyDocument or InvalidDocument.
void validate_document(const SourceDocument& doc);

} // namespace riverecho::corpus
