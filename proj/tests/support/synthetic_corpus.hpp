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
#include <map>
#include <set>
#include <string>
#include <vector>

namespace riverecho::testing {

struct SyntheticCorpusOptions {
    std::size_t chunks = 500;
    std::size_t entities = 300;
    std::size_t predicates = 24;
    std::uint64_t seed = 7;
};

// Ground truth kept alongside the generated chunks: the entity every mention
// was drawn from, independent of any normalization code.
struct SyntheticEntity {
    std::string canonical_name;
    corpus::EntityType type;
    std::set<std::string> aliases;
    std::set<std::string> chunk_refs;
};

struct SyntheticCorpus {
    std::vector<corpus::StructuredChunk> chunks;
    std::map<std::size_t, SyntheticEntity> entities; // by generator index, only those mentioned
};

// Accepted chunks with randomly drawn mentions and relations. Entity names
// are distinct, of equal length, and never equal a predicate. Some mentions
// carry surrounding whitespace or a decomposed accent so that merging has to
// normalize them.
SyntheticCorpus make_synthetic_corpus(const SyntheticCorpusOptions& options = {});

std::string synthetic_entity_name(std::size_t index);

} // namespace riverecho::testing
