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

#include <nlohmann/json.hpp>

#include <array>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace riverecho::gateway {

enum class RatingDimension { Professionalism, Informativeness, LogicalCoherence, Fluency };

inline constexpr std::array kAllRatingDimensions{RatingDimension::Professionalism, RatingDimension::Informativeness,
                                                 RatingDimension::LogicalCoherence, RatingDimension::Fluency};

std::string_view to_string(RatingDimension d);

struct RatingRecord {
    std::string session_id;
    RatingDimension dimension = RatingDimension::Professionalism;
    int score = 0;
    std::string rater_id;
};

class RatingInvalid : public Error {
public:
    using Error::Error;
};

RatingDimension parse_rating_dimension(std::string_view name);

// {"session_id","dimension","score","rater_id"}; score is an integer 1-5.
RatingRecord parse_rating(const nlohmann::json& j);

// Mean score per dimension; dimensions without records are absent.
std::map<RatingDimension, double> aggregate_ratings(std::span<const RatingRecord> records);

// [{"dimension":"Fluency","value":4.5}, ...] in dimension order.
nlohmann::json ratings_to_json(const std::map<RatingDimension, double>& means);

class RatingStore {
public:
    void add(RatingRecord record);
    std::vector<RatingRecord> all() const;

private:
    mutable std::mutex mutex_;
    std::vector<RatingRecord> records_;
};

} // namespace riverecho::gateway
