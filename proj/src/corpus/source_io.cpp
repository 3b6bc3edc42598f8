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

#include "riverecho/corpus/source_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace riverecho::corpus {
namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidDocument("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

SourceDocument load_source_document(const std::filesystem::path& text_path) {
    auto meta_path = text_path;
    meta_path.replace_extension(".meta.json");

    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(read_file(meta_path));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidDocument(meta_path.string() + ": " + e.what());
    }

    SourceDocument doc;
    doc.body = read_file(text_path);
    try {
        doc.title = meta.at("title").get<std::string>();
        const auto period = meta.at("period").get<std::string>();
        const auto theme = meta.at("theme").get<std::string>();
        const auto p = parse_period(period);
        const auto t = parse_theme(theme);
        if (!p) {
            throw InvalidDocument(meta_path.string() + ": unknown period '" + period + "'");
        }
        if (!t) {
            throw InvalidDocument(meta_path.string() + ": unknown theme '" + theme + "'");
        }
        doc.period = *p;
        doc.theme = *t;
        if (meta.contains("page_breaks")) {
            doc.page_breaks = meta.at("page_breaks").get<std::vector<std::size_t>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidDocument(meta_path.string() + ": " + e.what());
    }
    doc.doc_id = document_id(doc.title, doc.body);
    validate_document(doc);
    return doc;
}

std::vector<SourceDocument> load_source_directory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw InvalidDocument(dir.string() + " is not a directory");
    }
    std::vector<std::filesystem::path> texts;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            texts.push_back(entry.path());
        }
    }
    std::sort(texts.begin(), texts.end());
    std::vector<SourceDocument> docs;
    docs.reserve(texts.size());
    for (const auto& p : texts) {
        docs.push_back(load_source_document(p));
    }
    return docs;
}

} // namespace riverecho::corpus
