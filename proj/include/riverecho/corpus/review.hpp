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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace riverecho::corpus {

// Two-stage proofreading workflow.
//
//   Draft -> Sampled                      (sample_for_review)
//   Sampled -> Stage1Annotated            (stage 1, Pass or Flag)
//   Stage1Annotated -> Accepted           (stage 2, Pass)
//   Stage1Annotated -> Returned           (stage 2, Flag)
//   Returned -> Draft                     (reopen, re-proofreading loop)
//
// Stage2Verified is the verification step inside a stage-2 review; a chunk
// persisted in that state still admits its stage-2 finalization.

enum class ReviewDecision { Pass, Flag };

std::string_view to_string(ReviewDecision d);
std::optional<ReviewDecision> parse_review_decision(std::string_view s);

struct ReviewRecord {
    int stage = 1;
    std::string reviewer_id;
    std::vector<ErrorAnnotation> annotations;
    ReviewDecision decision = ReviewDecision::Pass;
    // Empty means "now".
    std::string timestamp;
};

class InvalidTransition : public Error {
public:
    InvalidTransition(ReviewState current, std::string attempted);
    ReviewState current() const { return current_; }
    const std::string& attempted() const { return attempted_; }

private:
    ReviewState current_;
    std::string attempted_;
};

// Stage 2 must be performed by a different reviewer than stage 1.
class ReviewerConflict : public Error {
public:
    using Error::Error;
};

class InvalidRate : public Error {
public:
    explicit InvalidRate(double rate);
};

// The declared automaton: target state or nullopt when illegal.
std::optional<ReviewState> review_target(ReviewState current, int stage, ReviewDecision decision);

StructuredChunk apply_review(StructuredChunk chunk, const ReviewRecord& record);

// Returned -> Draft.
StructuredChunk reopen_for_proofreading(StructuredChunk chunk, const std::string& reviewer_id,
                                        std::string timestamp = {});

// Pure selection: ceil(rate * n) ids drawn uniformly, determined only by the
// id set, the rate and the seed. Result is sorted by id.
std::vector<std::string> select_sample(std::vector<std::string> chunk_ids, double rate, std::uint64_t seed);

// Selects with select_sample and moves the selected chunks Draft -> Sampled.
// Every chunk must be in Draft.
std::vector<std::string> sample_for_review(std::span<StructuredChunk> chunks, double rate, std::uint64_t seed,
                                           const std::string& sampler_id = "sampler", std::string timestamp = {});

} // namespace riverecho::corpus
