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

#include "riverecho/corpus/review.hpp"

#include "riverecho/common/time.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

namespace riverecho::corpus {
namespace {

std::string describe(int stage, ReviewDecision decision) {
    return "stage " + std::to_string(stage) + " " + std::string(to_string(decision));
}

const std::string* last_reviewer_for(const ReviewStatus& status, ReviewState state) {
    for (auto it = status.history.rbegin(); it != status.history.rend(); ++it) {
        if (it->state == state) {
            return &it->reviewer_id;
        }
    }
    return nullptr;
}

} // namespace

std::string_view to_string(ReviewDecision d) { return d == ReviewDecision::Pass ? "Pass" : "Flag"; }

std::optional<ReviewDecision> parse_review_decision(std::string_view s) {
    if (s == "Pass") {
        return ReviewDecision::Pass;
    }
    if (s == "Flag") {
        return ReviewDecision::Flag;
    }
    return std::nullopt;
}

InvalidTransition::InvalidTransition(ReviewState current, std::string attempted)
    : Error("invalid review transition from " + std::string(to_string(current)) + ": " + attempted),
      current_(current),
      attempted_(std::move(attempted)) {}

InvalidRate::InvalidRate(double rate) : Error("sampling rate " + std::to_string(rate) + " is outside (0, 1]") {}

std::optional<ReviewState> review_target(ReviewState current, int stage, ReviewDecision decision) {
    if (stage == 1 && current == ReviewState::Sampled) {
        return ReviewState::Stage1Annotated;
    }
    if (stage == 2 && (current == ReviewState::Stage1Annotated || current == ReviewState::Stage2Verified)) {
        return decision == ReviewDecision::Pass ? ReviewState::Accepted : ReviewState::Returned;
    }
    return std::nullopt;
}

StructuredChunk apply_review(StructuredChunk chunk, const ReviewRecord& record) {
    const auto target = review_target(chunk.status.state, record.stage, record.decision);
    if (!target) {
        throw InvalidTransition(chunk.status.state, describe(record.stage, record.decision));
    }
    if (record.stage == 2) {
        const auto* first = last_reviewer_for(chunk.status, ReviewState::Stage1Annotated);
        if (first != nullptr && *first == record.reviewer_id) {
            throw ReviewerConflict("stage 2 reviewer '" + record.reviewer_id + "' also performed stage 1 on " +
                                   chunk.chunk_id);
        }
    }
    chunk.status.annotations.insert(chunk.status.annotations.end(), record.annotations.begin(),
                                    record.annotations.end());
    chunk.status.state = *target;
    chunk.status.history.push_back(
        ReviewEvent{*target, record.reviewer_id, record.timestamp.empty() ? utc_timestamp_now() : record.timestamp});
    return chunk;
}

StructuredChunk reopen_for_proofreading(StructuredChunk chunk, const std::string& reviewer_id, std::string timestamp) {
    if (chunk.status.state != ReviewState::Returned) {
        throw InvalidTransition(chunk.status.state, "reopen");
    }
    chunk.status.state = ReviewState::Draft;
    chunk.status.history.push_back(
        ReviewEvent{ReviewState::Draft, reviewer_id, timestamp.empty() ? utc_timestamp_now() : std::move(timestamp)});
    return chunk;
}

std::vector<std::string> select_sample(std::vector<std::string> chunk_ids, double rate, std::uint64_t seed) {
    if (!(rate > 0.0 && rate <= 1.0)) {
        throw InvalidRate(rate);
    }
    std::sort(chunk_ids.begin(), chunk_ids.end());
    chunk_ids.erase(std::unique(chunk_ids.begin(), chunk_ids.end()), chunk_ids.end());

    // Guard against 0.07 * 100 == 7.000000000000001.
    const auto wanted = static_cast<std::size_t>(std::ceil(rate * static_cast<double>(chunk_ids.size()) - 1e-9));

    // mt19937_64 output is fully specified by the standard, so keys (unlike
    // std::shuffle results) are identical across standard libraries.
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
    keyed.reserve(chunk_ids.size());
    for (std::size_t i = 0; i < chunk_ids.size(); ++i) {
        keyed.emplace_back(rng(), i);
    }
    std::sort(keyed.begin(), keyed.end());

    std::vector<std::string> selected;
    selected.reserve(wanted);
    for (std::size_t i = 0; i < wanted; ++i) {
        selected.push_back(chunk_ids[keyed[i].second]);
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

std::vector<std::string> sample_for_review(std::span<StructuredChunk> chunks, double rate, std::uint64_t seed,
                                           const std::string& sampler_id, std::string timestamp) {
    std::vector<std::string> ids;
    ids.reserve(chunks.size());
    for (const auto& c : chunks) {
        if (c.status.state != ReviewState::Draft) {
            throw InvalidTransition(c.status.state, "sample");
        }
        ids.push_back(c.chunk_id);
    }
    auto selected = select_sample(std::move(ids), rate, seed);
    const std::unordered_set<std::string> chosen(selected.begin(), selected.end());
    if (timestamp.empty()) {
        timestamp = utc_timestamp_now();
    }
    for (auto& c : chunks) {
        if (chosen.contains(c.chunk_id)) {
            c.status.state = ReviewState::Sampled;
            c.status.history.push_back(ReviewEvent{ReviewState::Sampled, sampler_id, timestamp});
        }
    }
    return selected;
}

} // namespace riverecho::corpus
