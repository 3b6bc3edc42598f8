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

#include "riverecho/gateway/cli.hpp"

#include "riverecho/backends/backend_set.hpp"
#include "riverecho/corpus/chunk_io.hpp"
#include "riverecho/corpus/ingest.hpp"
#include "riverecho/corpus/review.hpp"
#include "riverecho/corpus/source_io.hpp"
#include "riverecho/corpus/stats.hpp"
#include "riverecho/gateway/bench.hpp"
#include "riverecho/gateway/config.hpp"
#include "riverecho/gateway/server.hpp"
#include "riverecho/gateway/wire.hpp"
#include "riverecho/graph/graph_io.hpp"
#include "riverecho/graph/prompt.hpp"
#include "riverecho/graph/retrieval.hpp"
#include "riverecho/pipeline/session.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <pthread.h>

namespace riverecho::gateway {
namespace {

namespace fs = std::filesystem;

struct IngestArgs {
    fs::path docs;
    fs::path out;
    std::size_t max_chars = 500;
    unsigned jobs = 1;
    fs::path lexicon;
    std::string structurer_url;
};

struct SampleArgs {
    fs::path chunks;
    double rate = 0.1;
    std::uint64_t seed = 1;
    fs::path out;
    std::string sampler = "sampler";
};

struct ApplyArgs {
    fs::path chunks;
    fs::path reviews;
    fs::path out;
};

struct GraphArgs {
    fs::path chunks;
    fs::path out;
    bool admit_unreviewed = false;
};

struct QueryArgs {
    fs::path graph;
    std::string text;
    std::size_t k = 5;
    int depth = 1;
    bool json = false;
    bool prompt = false;
};

struct AskArgs {
    fs::path graph;
    std::string text;
    fs::path config;
    fs::path trace;
    bool events = false;
};

struct ServeArgs {
    fs::path config;
    std::string address;
    int port = -1;
    fs::path graph;
    fs::path static_dir;
};

struct BenchArgs {
    fs::path config;
    std::size_t sessions = 0;
    fs::path graph;
};

int run_ingest(const IngestArgs& a, std::ostream& out) {
    const auto docs = corpus::load_source_directory(a.docs);
    std::shared_ptr<const corpus::Structurer> structurer;
    if (!a.structurer_url.empty()) {
        structurer = std::make_shared<backends::RemoteStructurer>(backends::RemoteEndpoint{a.structurer_url});
    } else if (!a.lexicon.empty()) {
        structurer = std::make_shared<backends::StubStructurer>(backends::load_lexicon(a.lexicon));
    } else {
        structurer = std::make_shared<backends::StubStructurer>();
    }
    corpus::IngestOptions options;
    options.policy.max_chars = a.max_chars;
    options.jobs = std::max(1u, a.jobs);
    const auto chunks = corpus::ingest_documents(docs, *structurer, options);
    corpus::save_chunks(a.out, chunks);
    out << "ingested " << docs.size() << " documents into " << chunks.size() << " chunks -> " << a.out.string()
        << '\n';
    return kExitOk;
}

int run_sample(const SampleArgs& a, std::ostream& out) {
    auto chunks = corpus::load_chunks(a.chunks);
    const auto ids = corpus::sample_for_review(chunks, a.rate, a.seed, a.sampler);
    corpus::save_chunks(a.out.empty() ? a.chunks : a.out, chunks);
    for (const auto& id : ids) {
        out << id << '\n';
    }
    return kExitOk;
}

corpus::ErrorAnnotation parse_annotation(const nlohmann::json& j) {
    corpus::ErrorAnnotation a;
    const auto category = corpus::parse_error_category(j.at("category").get<std::string>());
    if (!category) {
        throw Error("unknown error category '" + j.at("category").get<std::string>() + "'");
    }
    a.category = *category;
    a.note = j.value("note", "");
    if (j.contains("span") && !j["span"].is_null()) {
        const auto& s = j["span"];
        a.span = corpus::Span{s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>()};
    }
    return a;
}

// Review file: a JSON array (or JSON lines) of
//   {"chunk_id", "stage": 1|2, "reviewer_id", "decision": "Pass"|"Flag", "annotations": [...], "timestamp"?}
// or {"chunk_id", "action": "reopen", "reviewer_id"} for returned chunks.
int run_apply(const ApplyArgs& a, std::ostream& out) {
    auto chunks = corpus::load_chunks(a.chunks);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        index[chunks[i].chunk_id] = i;
    }

    std::ifstream in(a.reviews);
    if (!in) {
        throw Error("cannot open " + a.reviews.string());
    }
    std::vector<nlohmann::json> items;
    const auto first = in.peek();
    if (first == '[') {
        for (auto& item : nlohmann::json::parse(in)) {
            items.push_back(std::move(item));
        }
    } else {
        for (std::string line; std::getline(in, line);) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                items.push_back(nlohmann::json::parse(line));
            }
        }
    }

    std::size_t applied = 0;
    for (const auto& item : items) {
        const auto id = item.at("chunk_id").get<std::string>();
        const auto it = index.find(id);
        if (it == index.end()) {
            throw Error("review references unknown chunk " + id);
        }
        auto& chunk = chunks[it->second];
        const auto reviewer = item.at("reviewer_id").get<std::string>();
        const auto timestamp = item.value("timestamp", "");
        if (item.value("action", "review") == "reopen") {
            chunk = corpus::reopen_for_proofreading(std::move(chunk), reviewer, timestamp);
        } else {
            corpus::ReviewRecord r;
            r.stage = item.at("stage").get<int>();
            r.reviewer_id = reviewer;
            r.timestamp = timestamp;
            const auto decision = corpus::parse_review_decision(item.at("decision").get<std::string>());
            if (!decision) {
                throw Error("unknown review decision for " + id);
            }
            r.decision = *decision;
            for (const auto& an : item.value("annotations", nlohmann::json::array())) {
                r.annotations.push_back(parse_annotation(an));
            }
            chunk = corpus::apply_review(std::move(chunk), r);
        }
        ++applied;
        out << id << ' ' << corpus::to_string(chunk.status.state) << '\n';
    }
    corpus::save_chunks(a.out.empty() ? a.chunks : a.out, chunks);
    out << "applied " << applied << " review events\n";
    return kExitOk;
}

int run_stats(const fs::path& chunks_path, std::ostream& out) {
    const auto chunks = corpus::load_chunks(chunks_path);
    out << corpus::format_stats_table(corpus::corpus_stats(chunks));
    return kExitOk;
}

int run_build_graph(const GraphArgs& a, std::ostream& out) {
    const auto chunks = corpus::load_chunks(a.chunks);
    graph::BuildOptions options;
    options.accepted_only = !a.admit_unreviewed;
    const auto g = graph::build_graph(chunks, options);
    graph::persist_graph(g, a.out);
    out << "graph: " << g.entities().size() << " entities, " << g.edges().size() << " edges, " << g.chunks().size()
        << " chunks -> " << a.out.string() << '\n';
    return kExitOk;
}

int run_query(const QueryArgs& a, std::ostream& out) {
    const auto g = graph::load_graph(a.graph);
    const auto ctx = graph::retrieve_context(g, a.text, a.k, a.depth);
    if (a.prompt) {
        out << graph::format_context_prompt(ctx, a.text, pipeline::PipelineConfig{}.prompt_budget_chars) << '\n';
        return kExitOk;
    }
    if (a.json) {
        out << context_to_json(ctx).dump(2) << '\n';
        return kExitOk;
    }
    for (std::size_t i = 0; i < ctx.chunks.size(); ++i) {
        const auto& c = ctx.chunks[i];
        out << (i + 1) << '\t' << c.chunk_id << '\t' << c.score << '\t' << "《" << c.book_title << "》p."
            << c.page_number << '\n';
    }
    return kExitOk;
}

ServerConfig config_or_default(const fs::path& path) {
    if (path.empty()) {
        ServerConfig c;
        apply_env_overrides(c, process_environment());
        validate(c);
        return c;
    }
    return load_server_config(path);
}

int run_ask(const AskArgs& a, std::ostream& out) {
    const auto config = config_or_default(a.config);
    const auto g = graph::load_graph(a.graph);
    auto set = backends::make_backend_set(config.backends);
    pipeline::SessionTrace trace;
    const auto events = pipeline::run_session(a.text, set, g, config.pipeline, &trace);
    WireEncoder encoder;
    int code = kExitOk;
    for (const auto& e : events) {
        if (a.events) {
            out << encoder.encode(e.event).dump() << '\n';
        } else if (const auto* s = std::get_if<pipeline::Sentence>(&e.event)) {
            out << s->text << '\n';
        }
        if (const auto* f = std::get_if<pipeline::StageFailure>(&e.event)) {
            if (!a.events) {
                out << "error in " << f->stage << ": " << f->message << '\n';
            }
            code = kExitRuntime;
        }
    }
    if (!a.trace.empty()) {
        std::ofstream t(a.trace);
        if (!t) {
            throw Error("cannot write " + a.trace.string());
        }
        pipeline::write_trace_ndjson(t, trace);
    }
    return code;
}

int run_serve(const ServeArgs& a, std::ostream& out) {
    auto config = load_server_config(a.config);
    if (!a.address.empty()) {
        config.address = a.address;
    }
    if (a.port >= 0) {
        config.port = static_cast<std::uint16_t>(a.port);
    }
    if (!a.graph.empty()) {
        config.graph_path = a.graph;
    }
    if (!a.static_dir.empty()) {
        config.static_dir = a.static_dir;
    }
    if (config.graph_path.empty()) {
        throw ConfigError("/graph", "no graph configured");
    }
    auto g = std::make_shared<const graph::KnowledgeGraph>(graph::load_graph(config.graph_path));

    // Signals are taken synchronously by this thread only.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    Server server(config, g);
    server.start();
    out << "listening on http://" << config.address << ':' << server.port() << std::endl;
    int received = 0;
    sigwait(&signals, &received);
    out << "stopping" << std::endl;
    server.stop();
    return kExitOk;
}

int run_bench_cmd(const BenchArgs& a, std::ostream& out) {
    auto config = load_server_config(a.config);
    if (a.sessions > 0) {
        config.bench_sessions = a.sessions;
    }
    if (!a.graph.empty()) {
        config.graph_path = a.graph;
    }
    if (config.graph_path.empty()) {
        throw ConfigError("/graph", "no graph configured");
    }
    const auto g = graph::load_graph(config.graph_path);
    out << format_bench_table(run_bench(config, g));
    return kExitOk;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"RiverEcho: Yellow River culture corpus, knowledge graph and streaming dialogue"};
    app.require_subcommand(1);

    IngestArgs ingest;
    auto* c_ingest = app.add_subcommand("ingest", "Segment and structure source documents into a chunk file");
    c_ingest->add_option("docs", ingest.docs, "Directory of *.txt documents with *.meta.json sidecars")
        ->required()
        ->check(CLI::ExistingDirectory);
    c_ingest->add_option("out", ingest.out, "Output chunk file (JSON lines)")->required();
    c_ingest->add_option("--max-chars", ingest.max_chars, "Chunk window in characters")->check(CLI::PositiveNumber);
    c_ingest->add_option("--jobs,-j", ingest.jobs, "Structuring workers")->check(CLI::PositiveNumber);
    c_ingest->add_option("--lexicon", ingest.lexicon, "Entity lexicon for the stub structurer")
        ->check(CLI::ExistingFile);
    c_ingest->add_option("--structurer-url", ingest.structurer_url, "Use a remote structuring service");

    SampleArgs sample;
    auto* c_sample = app.add_subcommand("review-sample", "Draw the quality-control sample and mark it Sampled");
    c_sample->add_option("chunks", sample.chunks)->required()->check(CLI::ExistingFile);
    c_sample->add_option("--rate", sample.rate, "Sampling fraction")->check(CLI::Range(0.0, 1.0));
    c_sample->add_option("--seed", sample.seed);
    c_sample->add_option("--sampler", sample.sampler, "Reviewer id recorded for the transition");
    c_sample->add_option("-o,--out", sample.out, "Write here instead of in place");

    ApplyArgs apply;
    auto* c_apply = app.add_subcommand("review-apply", "Apply review decisions to a chunk file");
    c_apply->add_option("chunks", apply.chunks)->required()->check(CLI::ExistingFile);
    c_apply->add_option("reviews", apply.reviews, "JSON array or JSON lines of review events")
        ->required()
        ->check(CLI::ExistingFile);
    c_apply->add_option("-o,--out", apply.out, "Write here instead of in place");

    fs::path stats_path;
    auto* c_stats = app.add_subcommand("stats", "Print chunk counts per theme");
    c_stats->add_option("chunks", stats_path)->required()->check(CLI::ExistingFile);

    GraphArgs build;
    auto* c_build = app.add_subcommand("build-graph", "Build and persist the knowledge graph");
    c_build->add_option("chunks", build.chunks)->required()->check(CLI::ExistingFile);
    c_build->add_option("out", build.out)->required();
    c_build->add_flag("--admit-unreviewed", build.admit_unreviewed, "Include chunks that are not Accepted");

    QueryArgs query;
    auto* c_query = app.add_subcommand("query", "Retrieve ranked context chunks for a question");
    c_query->add_option("graph", query.graph)->required()->check(CLI::ExistingFile);
    c_query->add_option("text", query.text)->required();
    c_query->add_option("--k", query.k)->check(CLI::PositiveNumber);
    c_query->add_option("--depth", query.depth)->check(CLI::Range(0, 2));
    c_query->add_flag("--json", query.json, "Print the retrieval context as JSON");
    c_query->add_flag("--prompt", query.prompt, "Print the LLM prompt instead");

    AskArgs ask;
    auto* c_ask = app.add_subcommand("ask", "Run one text dialogue turn through the full pipeline");
    c_ask->add_option("graph", ask.graph)->required()->check(CLI::ExistingFile);
    c_ask->add_option("text", ask.text)->required();
    c_ask->add_option("--config", ask.config)->check(CLI::ExistingFile);
    c_ask->add_option("--trace", ask.trace, "Write the session trace as JSON lines");
    c_ask->add_flag("--events", ask.events, "Print wire events instead of sentences");

    ServeArgs serve;
    auto* c_serve = app.add_subcommand("serve", "Run the HTTP/WebSocket gateway");
    c_serve->add_option("config", serve.config)->required()->check(CLI::ExistingFile);
    c_serve->add_option("--address", serve.address);
    c_serve->add_option("--port", serve.port)->check(CLI::Range(0, 65535));
    c_serve->add_option("--graph", serve.graph)->check(CLI::ExistingFile);
    c_serve->add_option("--static-dir", serve.static_dir)->check(CLI::ExistingDirectory);

    BenchArgs bench;
    auto* c_bench = app.add_subcommand("bench", "Run sessions and print the per-module processing times");
    c_bench->add_option("config", bench.config)->required()->check(CLI::ExistingFile);
    c_bench->add_option("--sessions", bench.sessions)->check(CLI::PositiveNumber);
    c_bench->add_option("--graph", bench.graph)->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*c_ingest) {
            return run_ingest(ingest, out);
        }
        if (*c_sample) {
            return run_sample(sample, out);
        }
        if (*c_apply) {
            return run_apply(apply, out);
        }
        if (*c_stats) {
            return run_stats(stats_path, out);
        }
        if (*c_build) {
            return run_build_graph(build, out);
        }
        if (*c_query) {
            return run_query(query, out);
        }
        if (*c_ask) {
            return run_ask(ask, out);
        }
        if (*c_serve) {
            return run_serve(serve, out);
        }
        if (*c_bench) {
            return run_bench_cmd(bench, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

} // namespace riverecho::gateway
