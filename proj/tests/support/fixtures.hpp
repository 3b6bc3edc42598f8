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

#include "riverecho/backends/backend_set.hpp"
#include "riverecho/corpus/types.hpp"
#include "riverecho/graph/knowledge_graph.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace riverecho::testing {

std::filesystem::path source_dir();
std::filesystem::path fixture_corpus_dir();
std::filesystem::path cli_path();

// Chunk window used for the bundled fixture corpus in tests.
inline constexpr std::size_t kFixtureMaxChars = 120;

// Fixture corpus ingested with the stub structurer and built with
// unreviewed chunks admitted. Built once per process.
const std::vector<corpus::StructuredChunk>& fixture_chunks();
const graph::KnowledgeGraph& fixture_graph();

backends::BackendSet stub_backends(const backends::StubPacing& pacing = backends::StubPacing::unpaced(),
                                   const backends::StubLlmOptions& llm = {}, const backends::StubTtsOptions& tts = {},
                                   int fps = 25);

// Published per-theme chunk counts of the reference corpus.
inline constexpr std::array<std::pair<corpus::Theme, std::size_t>, 8> kReferenceThemeCounts{{
    {corpus::Theme::RiverGovernance, 6125},
    {corpus::Theme::TechnologyEngineering, 4369},
    {corpus::Theme::NaturalKnowledge, 2552},
    {corpus::Theme::SocioEconomic, 1649},
    {corpus::Theme::CulturalHeritage, 1778},
    {corpus::Theme::HistoricalNarratives, 1551},
    {corpus::Theme::DisastersImpacts, 1268},
    {corpus::Theme::Interdisciplinary, 1116},
}};
inline constexpr std::size_t kReferenceTotal = 20408;

// Minimal chunks whose themes follow kReferenceThemeCounts.
std::vector<corpus::StructuredChunk> reference_shaped_corpus();

class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace riverecho::testing
