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

#include "riverecho/backends/wav.hpp"
#include "riverecho/gateway/server.hpp"
#include "riverecho/gateway/wire.hpp"
#include "riverecho/pipeline/session.hpp"

#include "support/event_checks.hpp"
#include "support/fixtures.hpp"
#include "support/ws_client.hpp"

#include <catch_amalgamated.hpp>
#include <httplib.h>

#include <future>
#include <set>

using namespace riverecho;
using namespace riverecho::gateway;
using nlohmann::json;

namespace {

const std::string kQuery = "黄河从哪里发源？";

ServerConfig unpaced_config() {
    ServerConfig c;
    c.port = 0;
    c.backends.pacing = backends::StubPacing::unpaced();
    return c;
}

// A running server on an ephemeral port over the fixture graph.
struct RunningServer {
    explicit RunningServer(ServerConfig config = unpaced_config())
        : server(std::move(config), std::make_shared<const graph::KnowledgeGraph>(testing::fixture_graph())) {
        server.start();
    }
    ~RunningServer() { server.stop(); }

    std::uint16_t port() { return server.port(); }
    httplib::Client http() {
        httplib::Client c("127.0.0.1", port());
        c.set_read_timeout(10, 0);
        return c;
    }
    testing::WsClient ws(const std::string& origin = {}) { return testing::WsClient("127.0.0.1", port(), "/session", origin); }

    Server server;
};

// Decoded events of one response, envelope seq checked along the way.
std::vector<pipeline::StageEvent> decode_response(const std::vector<json>& messages) {
    std::vector<pipeline::StageEvent> events;
    std::uint64_t seq = 0;
    for (const auto& m : messages) {
        CHECK(m["seq"] == seq++);
        events.push_back(decode_event(m));
    }
    return events;
}

} // namespace

TEST_CASE("a text query streams the same events as the library") {
    RunningServer srv;
    auto ws = srv.ws();
    const auto hello = ws.read();
    REQUIRE(hello);
    CHECK(*hello == hello_message());

    ws.send_text(json{{"query_text", kQuery}}.dump());
    const auto events = decode_response(ws.read_response());
    CHECK(testing::session_violations(events).empty());

    auto backends = testing::stub_backends();
    const auto expected = testing::without_times(pipeline::run_session(kQuery, backends, testing::fixture_graph()));
    CHECK(testing::streams_by_type(events) == testing::streams_by_type(expected));
    CHECK(testing::count_type(events, "metrics") == 1);
}

TEST_CASE("two queries on one connection restart the sequence") {
    RunningServer srv;
    auto ws = srv.ws();
    REQUIRE(ws.read());
    ws.send_text(json{{"query_text", "黄河"}}.dump());
    const auto first = ws.read_response();
    ws.send_text(json{{"query_text", "王景"}}.dump());
    const auto second = ws.read_response();
    REQUIRE_FALSE(first.empty());
    REQUIRE_FALSE(second.empty());
    CHECK(second.front()["seq"] == 0);
    CHECK(second.back()["type"] == "end");
    decode_response(first);
    decode_response(second);
    CHECK(srv.server.metrics().snapshot().size() == 2);
}

TEST_CASE("spoken queries arrive as binary frames") {
    RunningServer srv;
    auto ws = srv.ws();
    REQUIRE(ws.read());
    const auto clip = backends::make_fixture_clip(kQuery, 1.0);
    const auto bytes = backends::encode_wav(clip);
    ws.send_binary(bytes.substr(0, bytes.size() / 2));
    ws.send_binary(bytes.substr(bytes.size() / 2));
    ws.send_text(R"({"audio_end":true})");
    const auto events = decode_response(ws.read_response());
    REQUIRE_FALSE(events.empty());
    REQUIRE(std::holds_alternative<pipeline::TranscriptFinal>(events.front()));
    CHECK(std::get<pipeline::TranscriptFinal>(events.front()).text == kQuery);
    testing::SessionExpectations expect;
    expect.spoken_input = true;
    CHECK(testing::session_violations(events, expect).empty());
}

TEST_CASE("a malformed message gets an error and the connection closes") {
    RunningServer srv;
    auto ws = srv.ws();
    REQUIRE(ws.read());
    ws.send_text("{\"query_text\":");
    const auto error = ws.read();
    REQUIRE(error);
    CHECK((*error)["type"] == "error");
    CHECK((*error)["payload"]["stage"] == "gateway");
    CHECK_FALSE(ws.read());

    auto ws2 = srv.ws();
    REQUIRE(ws2.read());
    ws2.send_text(R"({"audio_end":true})");
    const auto e2 = ws2.read();
    REQUIRE(e2);
    CHECK((*e2)["type"] == "error");
    CHECK_FALSE(ws2.read());
}

TEST_CASE("metrics endpoint reports completed sessions") {
    RunningServer srv;
    auto http = srv.http();
    auto empty = http.Get("/metrics");
    REQUIRE(empty);
    CHECK(empty->status == 200);
    CHECK(json::parse(empty->body) == json::parse(R"({"sessions":[]})"));

    auto ws = srv.ws();
    REQUIRE(ws.read());
    ws.send_text(json{{"query_text", kQuery}}.dump());
    ws.read_response();

    auto after = http.Get("/metrics");
    REQUIRE(after);
    const auto j = json::parse(after->body);
    REQUIRE(j["sessions"].size() == 1);
    CHECK(j.contains("aggregate"));
    CHECK(j["sessions"][0]["llm_tokens_per_second"].is_number());
    CHECK(http.Post("/metrics", "", "text/plain")->status == 405);
}

TEST_CASE("ratings are accepted, validated and averaged") {
    RunningServer srv;
    auto http = srv.http();
    auto ok = http.Post("/ratings",
                        R"([{"session_id":"s","dimension":"Professionalism","score":3,"rater_id":"a"},
                            {"session_id":"s","dimension":"Professionalism","score":5,"rater_id":"b"}])",
                        "application/json");
    REQUIRE(ok);
    CHECK(ok->status == 200);
    auto single = http.Post("/ratings", R"({"session_id":"s","dimension":"Fluency","score":5,"rater_id":"a"})",
                            "application/json");
    CHECK(single->status == 200);

    auto bad = http.Post("/ratings", R"({"session_id":"s","dimension":"Fluency","score":7,"rater_id":"a"})",
                         "application/json");
    CHECK(bad->status == 400);
    CHECK(http.Post("/ratings", "{oops", "application/json")->status == 400);
    // A batch with one bad record is rejected whole.
    CHECK(http.Post("/ratings",
                    R"([{"session_id":"s","dimension":"Fluency","score":1,"rater_id":"a"},{"score":9}])",
                    "application/json")
              ->status == 400);

    auto means = http.Get("/ratings");
    REQUIRE(means);
    CHECK(json::parse(means->body) ==
          json::parse(R"([{"dimension":"Professionalism","value":4.0},{"dimension":"Fluency","value":5.0}])"));
}

TEST_CASE("static files are served from the configured directory only") {
    testing::TempDir dir;
    std::filesystem::create_directories(dir / "site" / "assets");
    testing::write_file(dir / "site" / "index.html", "<h1>console</h1>");
    testing::write_file(dir / "site" / "assets" / "app.js", "console.log(1)");
    testing::write_file(dir / "secret.txt", "nope");
    auto config = unpaced_config();
    config.static_dir = dir / "site";
    RunningServer srv(config);
    auto http = srv.http();

    auto index = http.Get("/");
    REQUIRE(index);
    CHECK(index->status == 200);
    CHECK(index->body == "<h1>console</h1>");
    CHECK(index->get_header_value("Content-Type").rfind("text/html", 0) == 0);
    auto js = http.Get("/assets/app.js");
    CHECK(js->status == 200);
    CHECK(js->get_header_value("Content-Type").find("javascript") != std::string::npos);
    CHECK(http.Get("/missing.css")->status == 404);

    // Raw socket so that the client does not normalize the dots away.
    httplib::Client raw("127.0.0.1", srv.port());
    httplib::Request req;
    req.method = "GET";
    req.path = "/../secret.txt";
    auto traversal = raw.send(req);
    REQUIRE(traversal);
    CHECK(traversal->status != 200);
    CHECK(traversal->body.find("nope") == std::string::npos);
}

TEST_CASE("without a static directory unknown paths are 404") {
    RunningServer srv;
    CHECK(srv.http().Get("/index.html")->status == 404);
}

TEST_CASE("cors headers follow the allowlist") {
    auto config = unpaced_config();
    config.cors_allowlist = {"http://localhost:5173"};
    RunningServer srv(config);
    auto http = srv.http();

    auto allowed = http.Get("/metrics", {{"Origin", "http://localhost:5173"}});
    REQUIRE(allowed);
    CHECK(allowed->get_header_value("Access-Control-Allow-Origin") == "http://localhost:5173");
    auto other = http.Get("/metrics", {{"Origin", "http://evil.example"}});
    CHECK_FALSE(other->has_header("Access-Control-Allow-Origin"));

    auto preflight = http.Options("/ratings", {{"Origin", "http://localhost:5173"},
                                                {"Access-Control-Request-Method", "POST"}});
    REQUIRE(preflight);
    CHECK(preflight->status == 204);
    CHECK(preflight->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);

    CHECK_THROWS(srv.ws("http://evil.example"));
    auto ws = srv.ws("http://localhost:5173");
    CHECK(ws.read());
}

TEST_CASE("plain http to the session path asks for an upgrade") {
    RunningServer srv;
    auto r = srv.http().Get("/session");
    REQUIRE(r);
    CHECK(r->status == 426);
}

TEST_CASE("concurrent sessions stay independent") {
    RunningServer srv;
    const std::vector<std::string> queries{"黄河从哪里发源？", "王景是怎样治河的？", "大禹治水", "潘季驯",
                                           "铜瓦厢决口", "水经注记载了什么？", "宋元时期的河患", "汉代瓠子决口"};
    std::vector<std::future<std::vector<pipeline::StageEvent>>> futures;
    for (const auto& q : queries) {
        futures.push_back(std::async(std::launch::async, [&srv, q] {
            auto ws = srv.ws();
            ws.read();
            ws.send_text(json{{"query_text", q}}.dump());
            std::vector<pipeline::StageEvent> events;
            for (const auto& m : ws.read_response()) {
                events.push_back(decode_event(m));
            }
            return events;
        }));
    }
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto events = futures[i].get();
        INFO(queries[i]);
        CHECK(testing::session_violations(events).empty());
        auto backends = testing::stub_backends();
        const auto expected =
            testing::without_times(pipeline::run_session(queries[i], backends, testing::fixture_graph()));
        CHECK(testing::streams_by_type(events) == testing::streams_by_type(expected));
    }
    CHECK(srv.server.metrics().snapshot().size() == queries.size());
}

TEST_CASE("stop closes open connections") {
    auto srv = std::make_unique<RunningServer>();
    auto ws = srv->ws();
    REQUIRE(ws.read());
    const auto start = Clock::now();
    srv.reset();
    CHECK(to_seconds(Clock::now() - start) < 5.0);
    CHECK_FALSE(ws.read());
}
