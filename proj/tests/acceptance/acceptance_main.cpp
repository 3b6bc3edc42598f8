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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runs headlessly against the stub backends.

#include "riverecho/backends/stubs.hpp"
#include "riverecho/common/pacing.hpp"
#include "riverecho/common/utf8.hpp"
#include "riverecho/corpus/review.hpp"
#include "riverecho/corpus/stats.hpp"
#include "riverecho/gateway/bench.hpp"
#include "riverecho/gateway/server.hpp"
#include "riverecho/gateway/wire.hpp"
#include "riverecho/graph/graph_io.hpp"
#include "riverecho/graph/retrieval.hpp"
#include "riverecho/pipeline/session.hpp"

#include "support/event_checks.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/synthetic_corpus.hpp"
#include "support/ws_client.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace riverecho;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::set<std::string> titles_of(const graph::RetrievalContext& ctx) {
    std::set<std::string> titles;
    for (const auto& c : ctx.chunks) {
        titles.insert(c.book_title);
    }
    return titles;
}

// Entity names of the fixture graph, most connected first.
std::vector<std::string> fixture_entity_names() {
    const auto& g = testing::fixture_graph();
    std::vector<std::pair<std::size_t, std::string>> ranked;
    for (const auto& [id, e] : g.entities()) {
        ranked.emplace_back(g.degree(id) + e.chunk_refs.size(), e.canonical_name);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<std::string> names;
    for (auto& [_, name] : ranked) {
        names.push_back(std::move(name));
    }
    return names;
}

Outcome accumulator_oracle() {
    const auto start = Clock::now();
    std::mt19937_64 rng(20240601);
    for (int i = 0; i < 1000; ++i) {
        const auto tokens = testing::random_token_stream(rng, pipeline::kDefaultSentencePunctuation);
        const auto problem = testing::check_accumulator_against_oracle(tokens, pipeline::kDefaultSentencePunctuation);
        if (!problem.empty()) {
            return fail("stream " + std::to_string(i) + ": " + problem);
        }
    }
    const double seconds = to_seconds(Clock::now() - start);
    std::ostringstream d;
    d << "1000/1000 streams in " << seconds << " s";
    return {seconds < 5.0, d.str()};
}

Outcome metrics_table() {
    gateway::ServerConfig config;
    config.bench_sessions = 10;
    const auto report = gateway::run_bench(config, testing::fixture_graph());
    const auto& m = report.mean;
    struct Row {
        const char* name;
        std::optional<double> got;
        double target;
    };
    const Row rows[] = {
        {"asr", m.asr_time_per_audio_second, 0.01460},
        {"llm", m.llm_tokens_per_second, 36.79},
        {"tts", m.tts_time_per_audio_second, 0.27448},
        {"frame", m.frame_drive_time, 0.0039},
    };
    bool ok = report.sessions.size() == 10 && report.wall_seconds < 120.0;
    std::ostringstream d;
    for (const auto& r : rows) {
        const bool within = r.got && std::abs(*r.got - r.target) <= 0.15 * r.target;
        ok = ok && within;
        d << r.name << "=" << (r.got ? std::to_string(*r.got) : "n/a") << (within ? "" : "(!)") << " ";
    }
    d << "wall=" << report.wall_seconds << "s";
    return {ok, d.str()};
}

Outcome pipelining() {
    const auto& g = testing::fixture_graph();
    backends::StubLlmOptions llm;
    llm.max_citations = 3;
    llm.excerpt_chars = 30;

    // A question whose context spans three books gives three cited sentences.
    std::string query;
    for (const auto& name : fixture_entity_names()) {
        if (titles_of(graph::retrieve_context(g, name, 5, 1)).size() >= 3) {
            query = name;
            break;
        }
    }
    if (query.empty()) {
        return fail("no fixture entity retrieves three books");
    }

    double worst_ratio = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        auto piped = testing::stub_backends(backends::StubPacing{}, llm);
        const auto start = Clock::now();
        const auto timed = pipeline::run_session(query, piped, g);
        const double wall = to_seconds(Clock::now() - start);

        const auto events = testing::without_times(timed);
        const auto sentences = testing::sentences_of(events);
        if (sentences.size() < 3) {
            return fail("only " + std::to_string(sentences.size()) + " sentences for " + query);
        }
        for (const auto& s : sentences) {
            if (utf8::length(s) < 30) {
                return fail("sentence shorter than 30 tokens: " + s);
            }
        }
        std::optional<Clock::time_point> first_audio;
        Clock::time_point last_token{};
        for (const auto& e : timed) {
            if (std::holds_alternative<pipeline::AudioBlock>(e.event) && !first_audio) {
                first_audio = e.at;
            }
            if (std::holds_alternative<pipeline::Token>(e.event)) {
                last_token = e.at;
            }
        }
        if (!first_audio || !(*first_audio < last_token)) {
            return fail("repetition " + std::to_string(rep + 1) + ": first audio not before last token");
        }

        auto fresh = testing::stub_backends(backends::StubPacing{}, llm);
        const auto sequential = pipeline::run_stages_sequentially(query, fresh, g);
        const double ratio = wall / sequential.total();
        worst_ratio = std::max(worst_ratio, ratio);
        if (ratio > 0.75) {
            std::ostringstream d;
            d << "repetition " << rep + 1 << ": wall " << wall << " s vs sequential " << sequential.total() << " s";
            return fail(d.str());
        }
    }
    std::ostringstream d;
    d << "10/10, query " << query << ", worst wall/sequential " << worst_ratio;
    return {true, d.str()};
}

// LLM that always answers with one fixed sentence.
class FixedLlm final : public backends::LlmBackend {
public:
    explicit FixedLlm(std::string text) : text_(std::move(text)) {}
    void stream(std::string_view, const backends::TokenSink& sink, std::stop_token) override {
        for (const auto cp : utf8::decode(text_)) {
            if (!sink(utf8::encode(std::u32string(1, cp)))) {
                return;
            }
        }
    }

private:
    std::string text_;
};

Outcome frame_pacing() {
    // Twenty characters at 0.25 s each is 5.0 s of audio.
    const std::string sentence = "黄河之水天上来奔流到海不复回千里万里流。";
    if (utf8::length(sentence) != 20) {
        return fail("fixture sentence is not 20 characters");
    }
    auto set = testing::stub_backends();
    set.llm = std::make_unique<FixedLlm>(sentence);
    const auto events = testing::without_times(pipeline::run_session(std::string("黄河"), set, testing::fixture_graph()));
    std::size_t samples = 0;
    std::vector<pipeline::VideoFrame> frames;
    for (const auto& e : events) {
        if (const auto* a = std::get_if<pipeline::AudioBlock>(&e)) {
            samples += a->samples.size();
        } else if (const auto* f = std::get_if<pipeline::VideoFrame>(&e)) {
            frames.push_back(*f);
        }
    }
    if (samples != 80000) {
        return fail("audio is " + std::to_string(samples) + " samples");
    }
    if (frames.size() != 125) {
        return fail(std::to_string(frames.size()) + " frames");
    }
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].frame_index != i || frames[i].presentation_time != static_cast<double>(i) / 25.0) {
            return fail("frame " + std::to_string(i) + " out of place");
        }
    }
    return {true, "125 frames, pts = index/25"};
}

Outcome graph_properties() {
    const auto corpus = testing::make_synthetic_corpus({500, 300, 24, 7});
    if (corpus.chunks.size() != 500) {
        return fail("synthetic corpus has " + std::to_string(corpus.chunks.size()) + " chunks");
    }

    // Dedup against the generator's ground truth grouping.
    std::vector<graph::MentionRef> mentions;
    for (const auto& c : corpus.chunks) {
        for (const auto& m : c.entities) {
            mentions.push_back({m, c.chunk_id});
        }
    }
    const auto dedup = graph::dedup_entities(mentions);
    if (dedup.entities.size() != corpus.entities.size()) {
        return fail("dedup made " + std::to_string(dedup.entities.size()) + " entities, expected " +
                    std::to_string(corpus.entities.size()));
    }
    for (const auto& [index, truth] : corpus.entities) {
        const auto it = dedup.entities.find(graph::entity_id_for(truth.canonical_name, truth.type));
        if (it == dedup.entities.end()) {
            return fail("missing entity " + truth.canonical_name);
        }
        if (it->second.chunk_refs != truth.chunk_refs || it->second.aliases != truth.aliases) {
            return fail("entity " + truth.canonical_name + " grouped differently");
        }
    }

    const auto g = graph::build_graph(corpus.chunks);
    if (g.entities() != dedup.entities) {
        return fail("graph entities differ from dedup");
    }
    std::mt19937 rng(5);
    for (int p = 0; p < 3; ++p) {
        auto shuffled = corpus.chunks;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        if (!(graph::build_graph(shuffled) == g)) {
            return fail("permutation " + std::to_string(p + 1) + " built a different graph");
        }
    }

    testing::TempDir dir;
    graph::persist_graph(g, dir / "synthetic.graph");
    const auto loaded = graph::load_graph(dir / "synthetic.graph");
    if (!(loaded == g)) {
        return fail("round trip changed the graph");
    }
    const auto problems = loaded.integrity_problems();
    if (!problems.empty()) {
        return fail("integrity: " + problems.front());
    }
    return {true, std::to_string(g.entities().size()) + " entities, " + std::to_string(g.edges().size()) +
                      " edges, 3 permutations, round trip"};
}

Outcome retrieval_recall() {
    const auto corpus = testing::make_synthetic_corpus({500, 300, 24, 11});
    const auto g = graph::build_graph(corpus.chunks);
    std::vector<const testing::SyntheticEntity*> pool;
    for (const auto& [_, truth] : corpus.entities) {
        pool.push_back(&truth);
    }
    std::mt19937 rng(13);
    std::shuffle(pool.begin(), pool.end(), rng);
    if (pool.size() < 50) {
        return fail("fewer than 50 entities");
    }
    for (std::size_t q = 0; q < 50; ++q) {
        const auto& truth = *pool[q];
        const auto id = graph::entity_id_for(truth.canonical_name, truth.type);
        const auto k = std::max(g.degree(id), truth.chunk_refs.size());
        const auto ctx = graph::retrieve_context(g, truth.canonical_name, k, 0);
        std::set<std::string> got;
        for (const auto& c : ctx.chunks) {
            got.insert(c.chunk_id);
        }
        if (got != truth.chunk_refs) {
            return fail("query " + truth.canonical_name + " returned " + std::to_string(got.size()) + " of " +
                        std::to_string(truth.chunk_refs.size()) + " chunks");
        }
        const auto again = graph::retrieve_context(g, truth.canonical_name, k, 0);
        if (gateway::context_to_json(again).dump() != gateway::context_to_json(ctx).dump()) {
            return fail("repeated retrieval differs for " + truth.canonical_name);
        }
    }
    return {true, "50/50 queries, identical on repeat"};
}

Outcome corpus_stats() {
    const auto chunks = testing::reference_shaped_corpus();
    const auto stats = corpus::corpus_stats(chunks);
    std::size_t sum = 0;
    for (const auto& [theme, expected] : testing::kReferenceThemeCounts) {
        const auto got = stats.per_theme.contains(theme) ? stats.per_theme.at(theme) : 0;
        if (got != expected) {
            return fail(std::string(corpus::theme_label(theme)) + " has " + std::to_string(got));
        }
        sum += got;
    }
    const auto table = corpus::format_stats_table(stats);
    const auto rows = std::count(table.begin(), table.end(), '\n');
    if (stats.per_theme.size() != 8 || rows != 10) {
        return fail("table layout has " + std::to_string(rows) + " lines");
    }
    if (sum != stats.total || stats.total != testing::kReferenceTotal) {
        return fail("sum " + std::to_string(sum) + " total " + std::to_string(stats.total));
    }
    return {true, "8 themes, total 20408"};
}

Outcome review_automaton() {
    using corpus::ReviewDecision;
    using corpus::ReviewState;
    // The declared automaton, written out independently.
    const auto declared = [](ReviewState s, int stage, ReviewDecision d) -> std::optional<ReviewState> {
        if (s == ReviewState::Sampled && stage == 1) {
            return ReviewState::Stage1Annotated;
        }
        if ((s == ReviewState::Stage1Annotated || s == ReviewState::Stage2Verified) && stage == 2) {
            return d == ReviewDecision::Pass ? ReviewState::Accepted : ReviewState::Returned;
        }
        return std::nullopt;
    };
    std::size_t pairs = 0;
    for (const auto state : corpus::kAllReviewStates) {
        for (int stage = 0; stage <= 3; ++stage) {
            for (const auto decision : {ReviewDecision::Pass, ReviewDecision::Flag}) {
                ++pairs;
                corpus::StructuredChunk c;
                c.chunk_id = "c";
                c.status.state = state;
                corpus::ReviewRecord r;
                r.stage = stage;
                r.decision = decision;
                r.reviewer_id = "reviewer";
                const auto expected = declared(state, stage, decision);
                const auto where = std::string(corpus::to_string(state)) + "/" + std::to_string(stage) + "/" +
                                   std::string(corpus::to_string(decision));
                if (corpus::review_target(state, stage, decision) != expected) {
                    return fail("review_target disagrees at " + where);
                }
                try {
                    const auto after = corpus::apply_review(c, r);
                    if (!expected || after.status.state != *expected) {
                        return fail("apply_review disagrees at " + where);
                    }
                } catch (const corpus::InvalidTransition& e) {
                    if (expected || e.current() != state) {
                        return fail("unexpected InvalidTransition at " + where);
                    }
                }
            }
        }
    }
    return {true, std::to_string(pairs) + " (state, stage, decision) triples"};
}

Outcome rag_visibility() {
    const auto& g = testing::fixture_graph();
    const auto names = fixture_entity_names();
    if (names.size() < 20) {
        return fail("fixture graph has fewer than 20 entities");
    }
    const std::vector<std::string> frames{"{}是什么？", "请介绍{}。", "{}有什么记载？", "{}"};
    std::size_t hits = 0;
    std::string missed;
    for (std::size_t i = 0; i < 20; ++i) {
        auto query = frames[i % frames.size()];
        query.replace(query.find("{}"), 2, names[i]);
        auto set = testing::stub_backends();
        const auto events = testing::without_times(pipeline::run_session(query, set, g));
        const auto* ctx = std::get_if<pipeline::ContextReady>(&events.front());
        const auto answer = testing::joined_tokens(events);
        bool cited = false;
        if (ctx) {
            for (const auto& title : titles_of(ctx->context)) {
                cited = cited || answer.find(title) != std::string::npos;
            }
        }
        if (cited) {
            ++hits;
        } else if (missed.empty()) {
            missed = query;
        }
    }
    return {hits == 20, std::to_string(hits) + "/20 answers cite a retrieved book" +
                            (missed.empty() ? "" : ", first miss: " + missed)};
}

Outcome concurrency_soak() {
    const auto& g = testing::fixture_graph();
    const auto names = fixture_entity_names();
    std::vector<std::string> queries;
    for (std::size_t i = 0; i < 8 && i < names.size(); ++i) {
        queries.push_back(names[i] + "的来历是什么？");
    }
    if (queries.size() != 8) {
        return fail("not enough fixture entities");
    }

    gateway::ServerConfig config;
    config.port = 0;
    gateway::Server server(config, std::make_shared<const graph::KnowledgeGraph>(g));
    server.start();
    const auto port = server.port();

    std::vector<std::future<std::vector<pipeline::StageEvent>>> futures;
    for (const auto& q : queries) {
        futures.push_back(std::async(std::launch::async, [port, q] {
            testing::WsClient ws("127.0.0.1", port);
            ws.read();
            ws.send_text(nlohmann::json{{"query_text", q}}.dump());
            std::vector<pipeline::StageEvent> events;
            for (const auto& m : ws.read_response()) {
                events.push_back(gateway::decode_event(m));
            }
            return events;
        }));
    }
    Outcome outcome{true, "8/8 sessions sound and isolated"};
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto events = futures[i].get();
        const auto problems = testing::session_violations(events);
        if (!problems.empty() && outcome.pass) {
            outcome = fail("session " + std::to_string(i + 1) + ": " + problems.front());
        }
        auto solo = testing::stub_backends();
        const auto expected = testing::without_times(pipeline::run_session(queries[i], solo, g));
        if (testing::streams_by_type(events) != testing::streams_by_type(expected) && outcome.pass) {
            outcome = fail("session " + std::to_string(i + 1) + " differs from its solo run");
        }
    }
    server.stop();
    return outcome;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"sentence accumulator oracle", accumulator_oracle},
        {"metrics table reproduction", metrics_table},
        {"pipelining", pipelining},
        {"frame pacing", frame_pacing},
        {"knowledge graph properties", graph_properties},
        {"retrieval recall and determinism", retrieval_recall},
        {"corpus stats", corpus_stats},
        {"review state machine", review_automaton},
        {"end-to-end rag visibility", rag_visibility},
        {"concurrency soak", concurrency_soak},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " " << criteria[i].first << ": "
                  << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
