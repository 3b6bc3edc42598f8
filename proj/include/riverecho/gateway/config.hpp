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
#include "riverecho/pipeline/session.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace riverecho::gateway {

struct ServerConfig {
    std::string address = "127.0.0.1";
    std::uint16_t port = 8080;
    std::filesystem::path graph_path;
    std::optional<std::filesystem::path> static_dir;
    std::vector<std::string> cors_allowlist; // "*" allows any origin
    std::size_t metrics_retention = 100;
    backends::BackendConfig backends;
    pipeline::PipelineConfig pipeline;
    std::size_t bench_sessions = 10;
    std::vector<std::string> bench_queries;
};

// Carries the location of the offending value: a JSON pointer into the
// config file ("/pipeline/target_fps") or "env:NAME" for the environment.
class ConfigError : public Error {
public:
    ConfigError(std::string location, const std::string& message)
        : Error(location + ": " + message), location_(std::move(location)) {}
    const std::string& location() const { return location_; }

private:
    std::string location_;
};

// Relative paths resolve against base_dir. Unknown keys are rejected.
ServerConfig parse_server_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

EnvLookup process_environment();

// RIVERECHO_ADDRESS, RIVERECHO_PORT, RIVERECHO_GRAPH, RIVERECHO_STATIC_DIR,
// RIVERECHO_CORS (comma separated), RIVERECHO_METRICS_RETENTION,
// RIVERECHO_PACING ("paper" or "unpaced") and RIVERECHO_<STAGE>_URL, which
// selects the remote backend for ASR, LLM, TTS, RENDERER or STRUCTURER.
void apply_env_overrides(ServerConfig& config, const EnvLookup& env);

// Precedence, lowest first: built-in defaults, config file, environment.
// Command-line flags are applied on top by the CLI.
ServerConfig load_server_config(const std::filesystem::path& path, const EnvLookup& env = process_environment());

// Cross-field checks; throws ConfigError.
void validate(const ServerConfig& config);

} // namespace riverecho::gateway
