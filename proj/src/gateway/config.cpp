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

#include "riverecho/gateway/config.hpp"

#include "riverecho/common/utf8.hpp"

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>

namespace riverecho::gateway {
namespace {

using nlohmann::json;

// A JSON object being read at a known pointer location.
class Section {
public:
    Section(const json& j, std::string pointer) : j_(j), pointer_(std::move(pointer)) {
        if (!j_.is_object()) {
            throw ConfigError(where(), "expected an object");
        }
    }

    void allow_only(std::initializer_list<std::string_view> keys) const {
        const std::set<std::string_view> allowed(keys);
        for (const auto& [key, value] : j_.items()) {
            if (!allowed.contains(key)) {
                throw ConfigError(pointer_ + "/" + key, "unknown key");
            }
        }
    }

    bool has(const char* key) const { return j_.contains(key); }

    Section child(const char* key) const { return Section(j_[key], pointer_ + "/" + key); }

    std::string path(const char* key) const { return pointer_ + "/" + key; }

    std::string string(const char* key) const {
        const auto& v = j_[key];
        if (!v.is_string()) {
            throw ConfigError(path(key), "expected a string");
        }
        return v.get<std::string>();
    }

    double number(const char* key, double min) const {
        const auto& v = j_[key];
        if (!v.is_number()) {
            throw ConfigError(path(key), "expected a number");
        }
        const auto d = v.get<double>();
        if (d < min) {
            throw ConfigError(path(key), "must be >= " + std::to_string(min));
        }
        return d;
    }

    std::int64_t integer(const char* key, std::int64_t min, std::int64_t max) const {
        const auto& v = j_[key];
        if (!v.is_number_integer()) {
            throw ConfigError(path(key), "expected an integer");
        }
        const auto i = v.get<std::int64_t>();
        if (i < min || i > max) {
            throw ConfigError(path(key), "must be in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
        }
        return i;
    }

    std::vector<std::string> strings(const char* key) const {
        const auto& v = j_[key];
        if (!v.is_array()) {
            throw ConfigError(path(key), "expected an array of strings");
        }
        std::vector<std::string> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_string()) {
                throw ConfigError(path(key) + "/" + std::to_string(i), "expected a string");
            }
            out.push_back(v[i].get<std::string>());
        }
        return out;
    }

    const json& raw(const char* key) const { return j_[key]; }
    std::string where() const { return pointer_.empty() ? "/" : pointer_; }

private:
    const json& j_;
    std::string pointer_;
};

constexpr auto kIntMax = std::numeric_limits<std::int32_t>::max();

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

backends::StageSelection parse_stage(const Section& s, bool with_voice, backends::RemoteTtsVoice* voice) {
    if (with_voice) {
        s.allow_only({"kind", "url", "timeout_ms", "retries", "backoff_ms", "voice", "rate"});
    } else {
        s.allow_only({"kind", "url", "timeout_ms", "retries", "backoff_ms"});
    }
    backends::StageSelection sel;
    if (s.has("kind")) {
        const auto kind = s.string("kind");
        if (kind == "stub") {
            sel.kind = backends::BackendKind::Stub;
        } else if (kind == "remote") {
            sel.kind = backends::BackendKind::Remote;
        } else {
            throw ConfigError(s.path("kind"), "expected \"stub\" or \"remote\"");
        }
    }
    if (s.has("url")) {
        sel.endpoint.base_url = s.string("url");
    }
    if (s.has("timeout_ms")) {
        sel.endpoint.timeout = std::chrono::milliseconds(s.integer("timeout_ms", 1, kIntMax));
    }
    if (s.has("retries")) {
        sel.endpoint.retries = static_cast<int>(s.integer("retries", 0, 10));
    }
    if (s.has("backoff_ms")) {
        sel.endpoint.backoff = std::chrono::milliseconds(s.integer("backoff_ms", 0, kIntMax));
    }
    if (sel.kind == backends::BackendKind::Remote && sel.endpoint.base_url.empty()) {
        throw ConfigError(s.path("url"), "required when kind is \"remote\"");
    }
    if (voice) {
        if (s.has("voice")) {
            voice->voice = s.string("voice");
        }
        if (s.has("rate")) {
            voice->rate = s.string("rate");
        }
    }
    return sel;
}

void parse_backends(const Section& s, const std::filesystem::path& base, backends::BackendConfig& b) {
    s.allow_only({"asr", "llm", "tts", "renderer", "structurer", "pacing", "stub_llm", "stub_tts", "asr_fixtures"});
    if (s.has("asr")) {
        b.asr = parse_stage(s.child("asr"), false, nullptr);
    }
    if (s.has("llm")) {
        b.llm = parse_stage(s.child("llm"), false, nullptr);
    }
    if (s.has("tts")) {
        b.tts = parse_stage(s.child("tts"), true, &b.voice);
    }
    if (s.has("renderer")) {
        b.renderer = parse_stage(s.child("renderer"), false, nullptr);
    }
    if (s.has("structurer")) {
        b.structurer = parse_stage(s.child("structurer"), false, nullptr);
    }
    if (s.has("pacing")) {
        const auto p = s.child("pacing");
        p.allow_only({"asr_rtf", "llm_rate", "tts_rtf", "frame_cost"});
        if (p.has("asr_rtf")) {
            b.pacing.asr_rtf = p.number("asr_rtf", 0.0);
        }
        if (p.has("llm_rate")) {
            b.pacing.llm_rate = p.number("llm_rate", 0.0);
        }
        if (p.has("tts_rtf")) {
            b.pacing.tts_rtf = p.number("tts_rtf", 0.0);
        }
        if (p.has("frame_cost")) {
            b.pacing.frame_cost = p.number("frame_cost", 0.0);
        }
    }
    if (s.has("stub_llm")) {
        const auto l = s.child("stub_llm");
        l.allow_only({"max_citations", "excerpt_chars"});
        if (l.has("max_citations")) {
            b.llm_options.max_citations = static_cast<std::size_t>(l.integer("max_citations", 0, 64));
        }
        if (l.has("excerpt_chars")) {
            b.llm_options.excerpt_chars = static_cast<std::size_t>(l.integer("excerpt_chars", 1, 4096));
        }
    }
    if (s.has("stub_tts")) {
        const auto t = s.child("stub_tts");
        t.allow_only({"seconds_per_char", "block_ms", "tone_hz", "amplitude"});
        if (t.has("seconds_per_char")) {
            b.tts_options.seconds_per_char = t.number("seconds_per_char", 1e-6);
        }
        if (t.has("block_ms")) {
            b.tts_options.block_ms = static_cast<int>(t.integer("block_ms", 1, 10000));
        }
        if (t.has("tone_hz")) {
            b.tts_options.tone_hz = t.number("tone_hz", 0.0);
        }
        if (t.has("amplitude")) {
            b.tts_options.amplitude = t.number("amplitude", 0.0);
            if (b.tts_options.amplitude > 1.0) {
                throw ConfigError(t.path("amplitude"), "must be <= 1");
            }
        }
    }
    if (s.has("asr_fixtures")) {
        // Either an inline {fingerprint: transcript} object or a path to one.
        const auto& raw = s.raw("asr_fixtures");
        json fixtures = raw;
        if (raw.is_string()) {
            const auto path = resolve(base, raw.get<std::string>());
            std::ifstream in(path);
            if (!in) {
                throw ConfigError(s.path("asr_fixtures"), "cannot open " + path.string());
            }
            try {
                fixtures = json::parse(in);
            } catch (const json::exception& e) {
                throw ConfigError(s.path("asr_fixtures"), std::string("invalid JSON: ") + e.what());
            }
        }
        if (!fixtures.is_object()) {
            throw ConfigError(s.path("asr_fixtures"), "expected an object of fingerprint -> transcript");
        }
        for (const auto& [k, v] : fixtures.items()) {
            if (!v.is_string()) {
                throw ConfigError(s.path("asr_fixtures") + "/" + k, "expected a string");
            }
            b.asr_fixtures[k] = v.get<std::string>();
        }
    }
}

void parse_pipeline(const Section& s, pipeline::PipelineConfig& p) {
    s.allow_only({"sample_rate", "target_fps", "queue_capacity", "output_capacity", "retrieval_k", "retrieval_depth",
                  "prompt_budget_chars", "sentence_punctuation"});
    if (s.has("sample_rate")) {
        p.sample_rate = static_cast<int>(s.integer("sample_rate", 1, 384000));
    }
    if (s.has("target_fps")) {
        p.target_fps = static_cast<int>(s.integer("target_fps", 1, 240));
    }
    if (s.has("queue_capacity")) {
        p.queue_capacity = static_cast<std::size_t>(s.integer("queue_capacity", 1, kIntMax));
    }
    if (s.has("output_capacity")) {
        p.output_capacity = static_cast<std::size_t>(s.integer("output_capacity", 1, kIntMax));
    }
    if (s.has("retrieval_k")) {
        p.retrieval_k = static_cast<std::size_t>(s.integer("retrieval_k", 1, kIntMax));
    }
    if (s.has("retrieval_depth")) {
        p.retrieval_depth = static_cast<int>(s.integer("retrieval_depth", 0, 2));
    }
    if (s.has("prompt_budget_chars")) {
        p.prompt_budget_chars = static_cast<std::size_t>(s.integer("prompt_budget_chars", 1, kIntMax));
    }
    if (s.has("sentence_punctuation")) {
        const auto text = s.string("sentence_punctuation");
        if (text.empty() || !utf8::is_valid(text)) {
            throw ConfigError(s.path("sentence_punctuation"), "expected a nonempty UTF-8 string");
        }
        p.sentence_punctuation = utf8::decode(text);
    }
}

std::size_t parse_count(const std::string& location, const std::string& text, std::size_t min) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(text, &used);
        if (used != text.size() || v < min) {
            throw std::invalid_argument(text);
        }
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ConfigError(location, "expected an integer >= " + std::to_string(min) + ", got '" + text + "'");
    }
}

} // namespace

ServerConfig parse_server_config(const json& doc, const std::filesystem::path& base_dir) {
    const Section root(doc, "");
    root.allow_only({"listen", "graph", "static_dir", "cors_allowlist", "metrics_retention", "pipeline", "backends",
                     "bench"});
    ServerConfig c;
    if (root.has("listen")) {
        const auto l = root.child("listen");
        l.allow_only({"address", "port"});
        if (l.has("address")) {
            c.address = l.string("address");
        }
        if (l.has("port")) {
            c.port = static_cast<std::uint16_t>(l.integer("port", 0, 65535));
        }
    }
    if (root.has("graph")) {
        c.graph_path = resolve(base_dir, root.string("graph"));
    }
    if (root.has("static_dir")) {
        c.static_dir = resolve(base_dir, root.string("static_dir"));
    }
    if (root.has("cors_allowlist")) {
        c.cors_allowlist = root.strings("cors_allowlist");
    }
    if (root.has("metrics_retention")) {
        c.metrics_retention = static_cast<std::size_t>(root.integer("metrics_retention", 1, kIntMax));
    }
    if (root.has("pipeline")) {
        parse_pipeline(root.child("pipeline"), c.pipeline);
    }
    if (root.has("backends")) {
        parse_backends(root.child("backends"), base_dir, c.backends);
    }
    if (root.has("bench")) {
        const auto b = root.child("bench");
        b.allow_only({"sessions", "queries"});
        if (b.has("sessions")) {
            c.bench_sessions = static_cast<std::size_t>(b.integer("sessions", 1, 100000));
        }
        if (b.has("queries")) {
            c.bench_queries = b.strings("queries");
        }
    }
    c.backends.fps = c.pipeline.target_fps;
    validate(c);
    return c;
}

EnvLookup process_environment() {
    return [](const std::string& name) -> std::optional<std::string> {
        if (const char* v = std::getenv(name.c_str())) {
            return std::string(v);
        }
        return std::nullopt;
    };
}

void apply_env_overrides(ServerConfig& c, const EnvLookup& env) {
    if (auto v = env("RIVERECHO_ADDRESS")) {
        c.address = *v;
    }
    if (auto v = env("RIVERECHO_PORT")) {
        const auto port = parse_count("env:RIVERECHO_PORT", *v, 0);
        if (port > 65535) {
            throw ConfigError("env:RIVERECHO_PORT", "must be <= 65535");
        }
        c.port = static_cast<std::uint16_t>(port);
    }
    if (auto v = env("RIVERECHO_GRAPH")) {
        c.graph_path = *v;
    }
    if (auto v = env("RIVERECHO_STATIC_DIR")) {
        c.static_dir = std::filesystem::path(*v);
    }
    if (auto v = env("RIVERECHO_CORS")) {
        c.cors_allowlist.clear();
        std::size_t start = 0;
        while (start <= v->size()) {
            const auto comma = v->find(',', start);
            const auto item = v->substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!item.empty()) {
                c.cors_allowlist.push_back(item);
            }
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
    }
    if (auto v = env("RIVERECHO_METRICS_RETENTION")) {
        c.metrics_retention = parse_count("env:RIVERECHO_METRICS_RETENTION", *v, 1);
    }
    if (auto v = env("RIVERECHO_PACING")) {
        if (*v == "paper") {
            c.backends.pacing = backends::StubPacing{};
        } else if (*v == "unpaced") {
            c.backends.pacing = backends::StubPacing::unpaced();
        } else {
            throw ConfigError("env:RIVERECHO_PACING", "expected \"paper\" or \"unpaced\"");
        }
    }
    const std::pair<const char*, backends::StageSelection*> stages[] = {
        {"RIVERECHO_ASR_URL", &c.backends.asr},
        {"RIVERECHO_LLM_URL", &c.backends.llm},
        {"RIVERECHO_TTS_URL", &c.backends.tts},
        {"RIVERECHO_RENDERER_URL", &c.backends.renderer},
        {"RIVERECHO_STRUCTURER_URL", &c.backends.structurer},
    };
    for (const auto& [name, stage] : stages) {
        if (auto v = env(name)) {
            if (v->empty()) {
                throw ConfigError(std::string("env:") + name, "empty URL");
            }
            stage->kind = backends::BackendKind::Remote;
            stage->endpoint.base_url = *v;
        }
    }
}

ServerConfig load_server_config(const std::filesystem::path& path, const EnvLookup& env) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path.string(), "cannot open config file");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + " (byte " + std::to_string(e.byte) + ")", "invalid JSON");
    }
    auto c = parse_server_config(doc, path.parent_path());
    apply_env_overrides(c, env);
    validate(c);
    return c;
}

void validate(const ServerConfig& c) {
    try {
        pipeline::validate(c.pipeline);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("/pipeline", e.what());
    }
    try {
        backends::validate(c.backends);
    } catch (const Error& e) {
        throw ConfigError("/backends", e.what());
    }
    if (c.backends.fps != c.pipeline.target_fps) {
        throw ConfigError("/pipeline/target_fps", "renderer fps and pipeline target_fps differ");
    }
    if (c.metrics_retention == 0) {
        throw ConfigError("/metrics_retention", "must be >= 1");
    }
}

} // namespace riverecho::gateway
