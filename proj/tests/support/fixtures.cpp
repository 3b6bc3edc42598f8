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

#include "fixtures.hpp"

#include "riverecho/corpus/ingest.hpp"
#include "riverecho/corpus/source_io.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace riverecho::testing {

std::filesystem::path source_dir() {
    return RIVERECHO_SOURCE_DIR;
}

std::filesystem::path fixture_corpus_dir() {
    return source_dir() / "data" / "fixture_corpus";
}

std::filesystem::path cli_path() {
    return RIVERECHO_CLI_PATH;
}

const std::vector<corpus::StructuredChunk>& fixture_chunks() {
    static const auto chunks = [] {
        const auto docs = corpus::load_source_directory(fixture_corpus_dir());
        const backends::StubStructurer structurer;
        corpus::IngestOptions options;
        options.policy.max_chars = kFixtureMaxChars;
        return corpus::ingest_documents(docs, structurer, options);
    }();
    return chunks;
}

const graph::KnowledgeGraph& fixture_graph() {
    static const auto g = graph::build_graph(fixture_chunks(), graph::BuildOptions{.accepted_only = false});
    return g;
}

backends::BackendSet stub_backends(const backends::StubPacing& pacing, const backends::StubLlmOptions& llm,
                                   const backends::StubTtsOptions& tts, int fps) {
    backends::BackendConfig config;
    config.pacing = pacing;
    config.llm_options = llm;
    config.tts_options = tts;
    config.fps = fps;
    return backends::make_backend_set(config);
}

std::vector<corpus::StructuredChunk> reference_shaped_corpus() {
    std::vector<corpus::StructuredChunk> chunks;
    chunks.reserve(kReferenceTotal);
    for (const auto& [theme, count] : kReferenceThemeCounts) {
        for (std::size_t i = 0; i < count; ++i) {
            corpus::StructuredChunk c;
            c.chunk_id = "chk-ref-" + std::to_string(chunks.size());
            c.doc_id = "doc-ref";
            c.theme = theme;
            c.basic.original_text = "甲。";
            c.basic.book_title = "参照";
            chunks.push_back(std::move(c));
        }
    }
    std::shuffle(chunks.begin(), chunks.end(), std::mt19937_64(20408));
    return chunks;
}

TempDir::TempDir() {
    std::random_device rd;
    const auto base = std::filesystem::temp_directory_path();
    for (;;) {
        path_ = base / ("riverecho-test-" + std::to_string(rd()));
        if (std::filesystem::create_directory(path_)) {
            break;
        }
    }
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace riverecho::testing
