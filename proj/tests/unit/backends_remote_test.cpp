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

#include "riverecho/backends/remote.hpp"
#include "riverecho/backends/wav.hpp"
#include "riverecho/common/digest.hpp"
#include "riverecho/common/pacing.hpp"

#include <catch_amalgamated.hpp>
#include <httplib.h>

#include <arpa/inet.h>
#include <atomic>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>
#include <thread>

using namespace riverecho;
using namespace riverecho::backends;

namespace {

// An httplib server on an ephemeral loopback port, torn down with the test.
class MockService {
public:
    MockService() = default;
    MockService(const MockService&) = delete;
    MockService& operator=(const MockService&) = delete;
    ~MockService() {
        server.stop();
        if (thread_.joinable()) {
            thread_.join();
        }
    }

    void start() {
        port_ = server.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    RemoteEndpoint endpoint(int timeout_ms = 2000, int retries = 1) const {
        return RemoteEndpoint{"http://127.0.0.1:" + std::to_string(port_), std::chrono::milliseconds(timeout_ms),
                              retries, std::chrono::milliseconds(10)};
    }

    httplib::Server server;
    std::atomic<int> hits{0};

private:
    int port_ = 0;
    std::thread thread_;
};

// A loopback port that was just free; nothing listens on it.
int closed_port() {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    socklen_t len = sizeof addr;
    ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr);
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
    ::close(fd);
    return ntohs(addr.sin_port);
}

void reply_json(httplib::Response& res, const nlohmann::json& j) { res.set_content(j.dump(), "application/json"); }

} // namespace

TEST_CASE("remote asr posts the audio and returns the text") {
    MockService mock;
    mock.server.Post("/v1/asr", [&](const httplib::Request& req, httplib::Response& res) {
        const auto body = nlohmann::json::parse(req.body);
        const auto pcm = base64_decode(body.at("pcm_base64").get<std::string>());
        reply_json(res, {{"text", "收到" + std::to_string(pcm.size() / 2) + "@" +
                                      std::to_string(body.at("sample_rate").get<int>())}});
    });
    mock.start();
    RemoteAsr asr(mock.endpoint());
    const auto clip = make_fixture_clip("黄河", 0.5);
    CHECK(asr.transcribe(clip, {}) == "收到8000@16000");
}

TEST_CASE("remote structurer echoes through a loopback service") {
    MockService mock;
    mock.server.Post("/v1/structure", [&](const httplib::Request& req, httplib::Response& res) {
        const auto body = nlohmann::json::parse(req.body);
        reply_json(res, {{"translation", body.at("text")},
                         {"summary", body.at("book_title")},
                         {"entities", nlohmann::json::array()},
                         {"relations", nlohmann::json::array()}});
    });
    mock.start();
    RemoteStructurer structurer(mock.endpoint());
    const auto out = structurer.structure({"c1", "禹治河。", "书", 2});
    CHECK(out.at("translation") == "禹治河。");
    CHECK(out.at("summary") == "书");
}

TEST_CASE("remote llm yields streamed tokens in order") {
    MockService mock;
    mock.server.Post("/v1/llm/stream", [&](const httplib::Request&, httplib::Response& res) {
        res.set_chunked_content_provider("application/x-ndjson", [](std::size_t, httplib::DataSink& sink) {
            for (int i = 0; i < 50; ++i) {
                const auto line = nlohmann::json{{"token", "t" + std::to_string(i)}}.dump() + "\n";
                // Split records across writes to exercise reassembly.
                sink.write(line.data(), line.size() / 2);
                sink.write(line.data() + line.size() / 2, line.size() - line.size() / 2);
            }
            const std::string done = "{\"done\":true}\n";
            sink.write(done.data(), done.size());
            sink.done();
            return true;
        });
    });
    mock.start();
    RemoteLlm llm(mock.endpoint());
    std::vector<std::string> tokens;
    llm.stream("问题：黄河", [&](std::string_view t) {
        tokens.emplace_back(t);
        return true;
    }, {});
    REQUIRE(tokens.size() == 50);
    for (int i = 0; i < 50; ++i) {
        CHECK(tokens[static_cast<std::size_t>(i)] == "t" + std::to_string(i));
    }
}

TEST_CASE("remote llm reports malformed stream records") {
    MockService mock;
    mock.server.Post("/v1/llm/stream", [&](const httplib::Request&, httplib::Response& res) {
        res.set_content("{\"token\":\"a\"}\nnot json\n", "application/x-ndjson");
    });
    mock.start();
    RemoteLlm llm(mock.endpoint());
    std::string got;
    try {
        llm.stream("p", [&](std::string_view t) {
            got += t;
            return true;
        }, {});
        FAIL("expected RemoteError");
    } catch (const RemoteError& e) {
        CHECK(e.kind() == RemoteFailure::MalformedResponse);
        CHECK(e.stage() == "llm");
    }
    CHECK(got == "a");
}

TEST_CASE("remote tts splits the returned audio into blocks") {
    MockService mock;
    mock.server.Post("/v1/tts", [&](const httplib::Request& req, httplib::Response& res) {
        const auto body = nlohmann::json::parse(req.body);
        CHECK(body.at("voice") == "zh-CN-YunjianNeural");
        CHECK(body.at("rate") == "-20%");
        std::vector<std::int16_t> pcm(1000);
        for (std::size_t i = 0; i < pcm.size(); ++i) {
            pcm[i] = static_cast<std::int16_t>(i);
        }
        reply_json(res, {{"sample_rate", body.at("sample_rate")}, {"pcm_base64", base64_encode(pcm_to_bytes(pcm))}});
    });
    mock.start();
    RemoteTts tts(mock.endpoint());
    std::vector<std::size_t> sizes;
    std::int16_t last = -1;
    tts.synthesize("黄河", 16000, [&](std::vector<std::int16_t> b) {
        sizes.push_back(b.size());
        CHECK(b.front() == last + 1);
        last = b.back();
        return true;
    }, {});
    CHECK(sizes == std::vector<std::size_t>{320, 320, 320, 40});
}

TEST_CASE("remote tts rejects a mismatched sample rate") {
    MockService mock;
    mock.server.Post("/v1/tts", [&](const httplib::Request&, httplib::Response& res) {
        reply_json(res, {{"sample_rate", 8000}, {"pcm_base64", ""}});
    });
    mock.start();
    RemoteTts tts(mock.endpoint());
    try {
        tts.synthesize("黄河", 16000, [](std::vector<std::int16_t>) { return true; }, {});
        FAIL("expected RemoteError");
    } catch (const RemoteError& e) {
        CHECK(e.kind() == RemoteFailure::MalformedResponse);
    }
}

TEST_CASE("remote renderer asks for exactly the frames owed") {
    MockService mock;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> requests;
    mock.server.Post("/v1/render", [&](const httplib::Request& req, httplib::Response& res) {
        const auto body = nlohmann::json::parse(req.body);
        requests.emplace_back(body.at("first_frame").get<std::uint64_t>(), body.at("frame_count").get<std::uint64_t>());
        reply_json(res, {{"rendered", body.at("frame_count")}});
    });
    mock.start();
    RemoteRenderer renderer(mock.endpoint(), 25);
    std::vector<std::uint64_t> frames;
    const std::vector<std::int16_t> block(4000, 0); // 0.25 s
    for (int i = 0; i < 4; ++i) {
        renderer.render(block, 16000, [&](std::uint64_t f) {
            frames.push_back(f);
            return true;
        }, {});
    }
    CHECK(frames.size() == 25);
    CHECK(requests == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 7}, {7, 6}, {13, 6}, {19, 6}});
}

TEST_CASE("unreachable services fail after the retry") {
    const int port = closed_port();
    RemoteStageClient client("asr", RemoteEndpoint{"http://127.0.0.1:" + std::to_string(port),
                                                   std::chrono::milliseconds(300), 1, std::chrono::milliseconds(10)});
    const auto start = Clock::now();
    try {
        client.call("/v1/asr", nlohmann::json::object());
        FAIL("expected RemoteError");
    } catch (const RemoteError& e) {
        CHECK(e.kind() == RemoteFailure::Unreachable);
        CHECK(e.stage() == "asr");
    }
    CHECK(to_seconds(Clock::now() - start) < 2.0);
}

TEST_CASE("slow services time out and are retried once") {
    MockService mock;
    mock.server.Post("/v1/asr", [&](const httplib::Request&, httplib::Response& res) {
        ++mock.hits;
        std::this_thread::sleep_for(std::chrono::milliseconds(600));
        reply_json(res, {{"text", "late"}});
    });
    mock.start();
    RemoteAsr asr(mock.endpoint(150, 1));
    try {
        asr.transcribe(make_fixture_clip("黄河", 0.1), {});
        FAIL("expected RemoteError");
    } catch (const RemoteError& e) {
        CHECK(e.kind() == RemoteFailure::Timeout);
    }
    CHECK(mock.hits == 2);
}

TEST_CASE("a transient failure is recovered by the retry") {
    MockService mock;
    mock.server.Post("/v1/asr", [&](const httplib::Request&, httplib::Response& res) {
        if (++mock.hits == 1) {
            std::this_thread::sleep_for(std::chrono::milliseconds(500));
        }
        reply_json(res, {{"text", "ok"}});
    });
    mock.start();
    RemoteAsr asr(mock.endpoint(150, 1));
    CHECK(asr.transcribe(make_fixture_clip("黄河", 0.1), {}) == "ok");
}

TEST_CASE("malformed bodies and error statuses are not retried") {
    MockService mock;
    mock.server.Post("/v1/asr", [&](const httplib::Request&, httplib::Response& res) {
        ++mock.hits;
        res.set_content("<html>", "text/html");
    });
    mock.server.Post("/v1/structure", [&](const httplib::Request&, httplib::Response& res) { res.status = 500; });
    mock.start();
    RemoteAsr asr(mock.endpoint());
    try {
        asr.transcribe(make_fixture_clip("黄河", 0.1), {});
        FAIL("expected RemoteError");
    } catch (const RemoteError& e) {
        CHECK(e.kind() == RemoteFailure::MalformedResponse);
    }
    CHECK(mock.hits == 1);

    RemoteStructurer structurer(mock.endpoint());
    CHECK_THROWS_AS(structurer.structure({"c", "t", "b", 1}), corpus::SchemaViolation);
}

TEST_CASE("remote structurer maps outages to BackendUnavailable") {
    const int port = closed_port();
    RemoteStructurer structurer(RemoteEndpoint{"http://127.0.0.1:" + std::to_string(port),
                                               std::chrono::milliseconds(200), 0, std::chrono::milliseconds(10)});
    CHECK_THROWS_AS(structurer.structure({"c", "t", "b", 1}), corpus::BackendUnavailable);
}

TEST_CASE("remote clients need an endpoint") {
    CHECK_THROWS_AS(RemoteStageClient("llm", RemoteEndpoint{}), Error);
}
