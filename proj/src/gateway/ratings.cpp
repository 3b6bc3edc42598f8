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

#include "riverecho/gateway/ratings.hpp"

namespace riverecho::gateway {

std::string_view to_string(RatingDimension d) {
    switch (d) {
    case RatingDimension::Professionalism:
        return "Professionalism";
    case RatingDimension::Informativeness:
        return "Informativeness";
    case RatingDimension::LogicalCoherence:
        return "LogicalCoherence";
    case RatingDimension::Fluency:
        return "Fluency";
    }
    return "?";
}

RatingDimension parse_rating_dimension(std::string_view name) {
    for (auto d : kAllRatingDimensions) {
        if (to_string(d) == name) {
            return d;
        }
    }
    throw RatingInvalid("unknown rating dimension '" + std::string(name) + "'");
}

RatingRecord parse_rating(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw RatingInvalid("rating must be an object");
    }
    const auto text = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty()) {
            throw RatingInvalid(std::string("rating needs a nonempty string '") + key + "'");
        }
        return j[key].get<std::string>();
    };
    RatingRecord r;
    r.session_id = text("session_id");
    r.rater_id = text("rater_id");
    r.dimension = parse_rating_dimension(text("dimension"));
    if (!j.contains("score") || !j["score"].is_number_integer()) {
        throw RatingInvalid("rating score must be an integer");
    }
    const auto score = j["score"].get<std::int64_t>();
    if (score < 1 || score > 5) {
        throw RatingInvalid("rating score " + std::to_string(score) + " is outside 1-5");
    }
    r.score = static_cast<int>(score);
    return r;
}

std::map<RatingDimension, double> aggregate_ratings(std::span<const RatingRecord> records) {
    std::map<RatingDimension, std::pair<long long, long long>> sums;
    for (const auto& r : records) {
        auto& [total, n] = sums[r.dimension];
        total += r.score;
        ++n;
    }
    std::map<RatingDimension, double> means;
    for (const auto& [d, s] : sums) {
        means[d] = static_cast<double>(s.first) / static_cast<double>(s.second);
    }
    return means;
}

nlohmann::json ratings_to_json(const std::map<RatingDimension, double>& means) {
    auto out = nlohmann::json::array();
    for (auto d : kAllRatingDimensions) {
        if (auto it = means.find(d); it != means.end()) {
            out.push_back({{"dimension", to_string(d)}, {"value", it->second}});
        }
    }
    return out;
}

void RatingStore::add(RatingRecord record) {
    std::lock_guard lock(mutex_);
    records_.push_back(std::move(record));
}

std::vector<RatingRecord> RatingStore::all() const {
    std::lock_guard lock(mutex_);
    return records_;
}

} // namespace riverecho::gateway
