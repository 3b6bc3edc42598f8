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

#include "riverecho/backends/stubs.hpp"

#include "riverecho/common/pacing.hpp"
#include "riverecho/common/utf8.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace riverecho::backends {
namespace {

constexpr std::u32string_view kTerminals = U"。！？…!?.；;";
constexpr std::string_view kRecordLabel = "[资料";
constexpr std::string_view kQueryLabel = "问题：";

struct Citation {
    std::string title;
    std::string page;
    std::string text;
};

// Removes sentence terminals so that quoted material cannot end a sentence early.
std::u32string defuse(std::u32string_view text) {
    std::u32string out;
    for (char32_t c : text) {
        if (c == U'\n' || c == U'\r') {
            continue;
        }
        out.push_back(kTerminals.find(c) != std::u32string_view::npos ? U'，' : c);
    }
    return out;
}

std::u32string trim_tail(std::u32string s) {
    while (!s.empty() && (s.back() == U'，' || s.back() == U'、' || s.back() == U' ' || s.back() == U',')) {
        s.pop_back();
    }
    return s;
}

std::string between(const std::string& line, std::string_view open, std::string_view close) {
    const auto a = line.find(open);
    if (a == std::string::npos) {
        return {};
    }
    const auto b = line.find(close, a + open.size());
    if (b == std::string::npos) {
        return {};
    }
    return line.substr(a + open.size(), b - a - open.size());
}

} // namespace

std::string compose_stub_answer(std::string_view prompt, const StubLlmOptions& options) {
    if (prompt.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        return std::string(kStubFallbackAnswer);
    }

    std::vector<std::string> lines;
    {
        std::istringstream in{std::string(prompt)};
        for (std::string line; std::getline(in, line);) {
            lines.push_back(line);
        }
    }

    std::string query;
    std::vector<Citation> citations;
    bool labelled = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.starts_with(kQueryLabel)) {
            query = line.substr(kQueryLabel.size());
            labelled = true;
        } else if (line.starts_with(kRecordLabel)) {
            Citation c{between(line, "《", "》"), between(line, "第", "页"),
                       i + 1 < lines.size() ? lines[i + 1] : std::string{}};
            const bool seen = std::any_of(citations.begin(), citations.end(),
                                          [&](const Citation& x) { return x.title == c.title; });
            if (!c.title.empty() && !seen && citations.size() < options.max_citations) {
                citations.push_back(std::move(c));
            }
        }
    }
    if (!labelled) {
        query = std::string(prompt);
    }

    const auto q = utf8::encode(trim_tail(defuse(utf8::decode(query))));
    std::string answer = "关于“" + q + "”，";
    if (citations.empty()) {
        answer += "资料库中暂无相关记载。";
        return answer;
    }
    for (std::size_t i = 0; i < citations.size(); ++i) {
        const auto& c = citations[i];
        auto excerpt = trim_tail(defuse(utf8::decode(c.text)).substr(0, options.excerpt_chars));
        if (excerpt.empty()) {
            excerpt = U"相关内容见原书";
        }
        answer += i == 0 ? "据《" : "另据《";
        answer += c.title + "》";
        if (!c.page.empty()) {
            answer += "第" + c.page + "页";
        }
        answer += "记载，" + utf8::encode(excerpt) + "。";
    }
    return answer;
}

StubLlm::StubLlm(double rate, StubLlmOptions options) : rate_(rate), options_(options) {}

void StubLlm::stream(std::string_view prompt, const TokenSink& sink, std::stop_token stop) {
    const auto request_time = Clock::now();
    const auto tokens = utf8::split_code_points(compose_stub_answer(prompt, options_));
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (rate_ > 0.0) {
            const auto due = request_time + seconds_to_duration(static_cast<double>(i + 1) / rate_);
            if (!pace_until(stop, due)) {
                return;
            }
        } else if (stop.stop_requested()) {
            return;
        }
        if (!sink(tokens[i])) {
            return;
        }
    }
}

} // namespace riverecho::backends
