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

#include <filesystem>
#include <vector>

namespace riverecho::corpus {

// A document is `<name>.txt` (UTF-8 body) with a sidecar `<name>.meta.json`
// holding one JSON record:
//   {"title": "...", "period": "Han", "theme": "RiverGovernance", "page_breaks": [120, 480]}
SourceDocument load_source_document(const std::filesystem::path& text_path);

// Every `*.txt` in the directory, ordered by file name.
std::vector<SourceDocument> load_source_directory(const std::filesystem::path& dir);

} // namespace riverecho::corpus
