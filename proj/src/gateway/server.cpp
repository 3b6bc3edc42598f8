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

#include "riverecho/gateway/server.hpp"

#include "riverecho/backends/wav.hpp"
#include "riverecho/gateway/wire.hpp"
#include "riverecho/pipeline/session.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <sys/socket.h>

#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace riverecho::gateway {
namespace {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

using Request = http::request<http::string_body>;
using Response = http::response<http::string_body>;

constexpr std::size_t kMaxAudioBytes = 64u << 20;

std::string_view mime_type(const std::filesystem::path& p) {
    static const std::map<std::string, std::string_view> types{
        {".html", "text/html; charset=utf-8"}, {".js", "text/javascript"}, {".mjs", "text/javascript"},
        {".css", "text/css"},                  {".json", "application/json"}, {".svg", "image/svg+xml"},
        {".png", "image/png"},                 {".ico", "image/x-icon"},     {".wasm", "application/wasm"},
        {".map", "application/json"},          {".txt", "text/plain; charset=utf-8"},
    };
    const auto it = types.find(p.extension().string());
    return it == types.end() ? std::string_view("application/octet-stream") : it->second;
}

std::string_view sv(beast::string_view s) {
    return {s.data(), s.size()};
}

std::string_view path_of(std::string_view target) {
    return target.substr(0, target.find('?'));
}

nlohmann::json gateway_error(const std::string& message) {
    return nlohmann::json{{"type", "error"}, {"seq", 0}, {"payload", {{"stage", "gateway"}, {"message", message}}}};
}

} // namespace

struct Server::Impl {
    Impl(ServerConfig c, std::shared_ptr<const graph::KnowledgeGraph> g)
        : config(std::move(c)), graph(std::move(g)), metrics(config.metrics_retention) {}

    ServerConfig config;
    std::shared_ptr<const graph::KnowledgeGraph> graph;
    MetricsStore metrics;
    RatingStore ratings;

    net::io_context ioc;
    std::optional<tcp::acceptor> acceptor;
    std::uint16_t bound_port = 0;
    std::thread accept_thread;

    std::mutex conn_mutex;
    std::map<std::uint64_t, std::shared_ptr<tcp::socket>> sockets;
    std::map<std::uint64_t, std::thread> threads;
    std::vector<std::uint64_t> finished;
    std::uint64_t next_conn = 0;

    std::atomic<bool> stopping{false};
    std::atomic<std::uint64_t> session_counter{0};

    std::mutex state_mutex;
    std::condition_variable state_cv;
    bool stopped = false;

    bool origin_allowed(std::string_view origin) const {
        for (const auto& o : config.cors_allowlist) {
            if (o == "*" || o == origin) {
                return true;
            }
        }
        return false;
    }

    void add_cors(const Request& req, Response& res) const {
        const auto origin = sv(req[http::field::origin]);
        if (origin.empty() || !origin_allowed(origin)) {
            return;
        }
        res.set(http::field::access_control_allow_origin, std::string(origin));
        res.set(http::field::vary, "Origin");
        res.set(http::field::access_control_allow_methods, "GET, POST, OPTIONS");
        res.set(http::field::access_control_allow_headers, "Content-Type");
    }

    Response make(const Request& req, http::status status, std::string body, std::string_view type) const {
        Response res{status, req.version()};
        res.set(http::field::server, "riverecho");
        res.set(http::field::content_type, std::string(type));
        res.keep_alive(req.keep_alive());
        res.body() = std::move(body);
        res.prepare_payload();
        add_cors(req, res);
        return res;
    }

    Response json_response(const Request& req, http::status status, const nlohmann::json& body) const {
        return make(req, status, body.dump(), "application/json");
    }

    Response handle_ratings_post(const Request& req) {
        nlohmann::json body;
        try {
            body = nlohmann::json::parse(req.body());
        } catch (const nlohmann::json::exception& e) {
            return json_response(req, http::status::bad_request, {{"error", std::string("malformed JSON: ") + e.what()}});
        }
        std::vector<RatingRecord> parsed;
        try {
            if (body.is_array()) {
                for (const auto& item : body) {
                    parsed.push_back(parse_rating(item));
                }
            } else {
                parsed.push_back(parse_rating(body));
            }
        } catch (const RatingInvalid& e) {
            return json_response(req, http::status::bad_request, {{"error", e.what()}});
        }
        for (auto& r : parsed) {
            ratings.add(std::move(r));
        }
        return json_response(req, http::status::ok, {{"accepted", parsed.size()}});
    }

    Response handle_static(const Request& req) {
        if (!config.static_dir) {
            return json_response(req, http::status::not_found, {{"error", "not found"}});
        }
        std::string rel(path_of(sv(req.target())));
        while (!rel.empty() && rel.front() == '/') {
            rel.erase(0, 1);
        }
        const auto root = std::filesystem::weakly_canonical(*config.static_dir);
        auto file = (root / rel).lexically_normal();
        const auto [mismatch, _] = std::mismatch(root.begin(), root.end(), file.begin(), file.end());
        if (mismatch != root.end()) {
            return json_response(req, http::status::forbidden, {{"error", "forbidden"}});
        }
        std::error_code ec;
        if (rel.empty() || std::filesystem::is_directory(file, ec)) {
            file /= "index.html";
        }
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            return json_response(req, http::status::not_found, {{"error", "not found"}});
        }
        std::ostringstream content;
        content << in.rdbuf();
        auto res = make(req, http::status::ok, content.str(), mime_type(file));
        if (req.method() == http::verb::head) {
            res.body().clear();
        }
        return res;
    }

    Response handle_http(const Request& req) {
        const auto path = path_of(sv(req.target()));
        if (req.method() == http::verb::options) {
            return make(req, http::status::no_content, "", "text/plain");
        }
        if (path == "/metrics") {
            if (req.method() != http::verb::get) {
                return json_response(req, http::status::method_not_allowed, {{"error", "use GET"}});
            }
            return json_response(req, http::status::ok, metrics.to_json());
        }
        if (path == "/ratings") {
            if (req.method() == http::verb::post) {
                return handle_ratings_post(req);
            }
            if (req.method() == http::verb::get) {
                const auto all = ratings.all();
                return json_response(req, http::status::ok, ratings_to_json(aggregate_ratings(all)));
            }
            return json_response(req, http::status::method_not_allowed, {{"error", "use GET or POST"}});
        }
        if (path == "/session") {
            return json_response(req, http::status::upgrade_required, {{"error", "WebSocket upgrade required"}});
        }
        if (req.method() == http::verb::get || req.method() == http::verb::head) {
            return handle_static(req);
        }
        return json_response(req, http::status::method_not_allowed, {{"error", "method not allowed"}});
    }

    std::string new_session_id() {
        char buf[32];
        std::snprintf(buf, sizeof buf, "s-%06llu", static_cast<unsigned long long>(++session_counter));
        return buf;
    }

    pipeline::SessionInput audio_input(const std::string& bytes) const {
        const auto* data = reinterpret_cast<const std::uint8_t*>(bytes.data());
        const std::span<const std::uint8_t> span(data, bytes.size());
        if (bytes.size() >= 4 && bytes.compare(0, 4, "RIFF") == 0) {
            auto clip = backends::decode_wav(span);
            if (clip.sample_rate != config.pipeline.sample_rate) {
                throw WireError("audio sample rate " + std::to_string(clip.sample_rate) + " != " +
                                std::to_string(config.pipeline.sample_rate));
            }
            return clip;
        }
        if (bytes.size() % 2 != 0) {
            throw WireError("PCM audio must have an even number of bytes");
        }
        backends::AudioClip clip;
        clip.samples = backends::pcm_from_bytes(span);
        clip.sample_rate = config.pipeline.sample_rate;
        return clip;
    }

    template <typename WS>
    void send(WS& ws, const nlohmann::json& message) {
        ws.text(true);
        ws.write(net::buffer(message.dump()));
    }

    template <typename WS>
    void stream_session(WS& ws, pipeline::SessionInput input) {
        const auto session_id = new_session_id();
        WireEncoder encoder;
        backends::BackendSet set;
        try {
            set = backends::make_backend_set(config.backends);
        } catch (const std::exception& e) {
            send(ws, encoder.encode(pipeline::StageFailure{"gateway", e.what()}));
            send(ws, encoder.encode(pipeline::End{}));
            return;
        }
        pipeline::Session session(std::move(input), set, *graph, config.pipeline);
        while (auto event = session.next()) {
            if (const auto* m = std::get_if<pipeline::MetricsReport>(&event->event)) {
                metrics.record(session_id, m->metrics);
            }
            send(ws, encoder.encode(event->event));
        }
    }

    void run_websocket(tcp::socket& socket, beast::flat_buffer& buffer, Request req) {
        websocket::stream<tcp::socket&> ws(socket);
        ws.set_option(websocket::stream_base::decorator(
            [](websocket::response_type& res) { res.set(http::field::server, "riverecho"); }));
        ws.accept(req);
        send(ws, hello_message());

        std::string audio;
        for (;;) {
            buffer.clear();
            beast::error_code ec;
            ws.read(buffer, ec);
            if (ec) {
                return;
            }
            if (!ws.got_text()) {
                if (audio.size() + buffer.size() > kMaxAudioBytes) {
                    send(ws, gateway_error("audio exceeds " + std::to_string(kMaxAudioBytes) + " bytes"));
                    ws.close(websocket::close_code::too_big, ec);
                    return;
                }
                audio += beast::buffers_to_string(buffer.data());
                continue;
            }
            pipeline::SessionInput input;
            try {
                const auto message = parse_client_message(beast::buffers_to_string(buffer.data()));
                if (const auto* q = std::get_if<QueryText>(&message)) {
                    input = q->text;
                } else {
                    if (audio.empty()) {
                        throw WireError("audio_end without preceding audio frames");
                    }
                    input = audio_input(audio);
                }
            } catch (const Error& e) {
                send(ws, gateway_error(e.what()));
                ws.close(websocket::close_code::policy_error, ec);
                return;
            }
            audio.clear();
            stream_session(ws, std::move(input));
        }
    }

    void handle_connection(std::shared_ptr<tcp::socket> socket) {
        beast::flat_buffer buffer;
        try {
            for (;;) {
                Request req;
                beast::error_code ec;
                http::read(*socket, buffer, req, ec);
                if (ec) {
                    break;
                }
                if (websocket::is_upgrade(req)) {
                    const auto origin = sv(req[http::field::origin]);
                    if (path_of(sv(req.target())) != "/session") {
                        http::write(*socket, json_response(req, http::status::not_found, {{"error", "not found"}}));
                        break;
                    }
                    if (!origin.empty() && !config.cors_allowlist.empty() && !origin_allowed(origin)) {
                        http::write(*socket,
                                    json_response(req, http::status::forbidden, {{"error", "origin not allowed"}}));
                        break;
                    }
                    run_websocket(*socket, buffer, std::move(req));
                    break;
                }
                auto res = handle_http(req);
                const bool keep = res.keep_alive();
                http::write(*socket, res, ec);
                if (ec || !keep) {
                    break;
                }
            }
        } catch (const std::exception&) {
            // The peer went away or the server is stopping.
        }
        beast::error_code ignored;
        socket->shutdown(tcp::socket::shutdown_both, ignored);
    }

    void reap() {
        std::vector<std::thread> done;
        {
            std::lock_guard lock(conn_mutex);
            for (auto id : finished) {
                if (auto it = threads.find(id); it != threads.end()) {
                    done.push_back(std::move(it->second));
                    threads.erase(it);
                }
            }
            finished.clear();
        }
        for (auto& t : done) {
            t.join();
        }
    }

    void accept_loop() {
        while (!stopping) {
            auto socket = std::make_shared<tcp::socket>(ioc);
            beast::error_code ec;
            acceptor->accept(*socket, ec);
            reap();
            if (ec) {
                if (stopping) {
                    break;
                }
                continue;
            }
            std::lock_guard lock(conn_mutex);
            if (stopping) {
                break;
            }
            const auto id = next_conn++;
            sockets[id] = socket;
            threads[id] = std::thread([this, socket, id] {
                handle_connection(socket);
                std::lock_guard lock(conn_mutex);
                sockets.erase(id);
                finished.push_back(id);
            });
        }
    }
};

Server::Server(ServerConfig config, std::shared_ptr<const graph::KnowledgeGraph> graph) {
    validate(config);
    if (!graph) {
        throw Error("server requires a knowledge graph");
    }
    impl_ = std::make_unique<Impl>(std::move(config), std::move(graph));
}

Server::~Server() {
    stop();
}

void Server::start() {
    auto& d = *impl_;
    if (d.acceptor) {
        throw Error("server already started");
    }
    boost::system::error_code ec;
    const auto address = net::ip::make_address(d.config.address, ec);
    if (ec) {
        throw Error("invalid listen address '" + d.config.address + "'");
    }
    const tcp::endpoint endpoint(address, d.config.port);
    d.acceptor.emplace(d.ioc);
    d.acceptor->open(endpoint.protocol());
    d.acceptor->set_option(net::socket_base::reuse_address(true));
    d.acceptor->bind(endpoint, ec);
    if (ec) {
        throw Error("cannot bind " + d.config.address + ":" + std::to_string(d.config.port) + ": " + ec.message());
    }
    d.acceptor->listen(net::socket_base::max_listen_connections);
    d.bound_port = d.acceptor->local_endpoint().port();
    d.accept_thread = std::thread([&d] { d.accept_loop(); });
}

std::uint16_t Server::port() const {
    return impl_->bound_port;
}

void Server::stop() {
    auto& d = *impl_;
    if (d.stopping.exchange(true)) {
        return;
    }
    if (d.acceptor) {
        // Wakes the blocking accept().
        ::shutdown(d.acceptor->native_handle(), SHUT_RDWR);
    }
    if (d.accept_thread.joinable()) {
        d.accept_thread.join();
    }
    std::map<std::uint64_t, std::thread> threads;
    {
        std::lock_guard lock(d.conn_mutex);
        for (auto& [id, socket] : d.sockets) {
            ::shutdown(socket->native_handle(), SHUT_RDWR);
        }
        threads.swap(d.threads);
    }
    for (auto& [id, t] : threads) {
        t.join();
    }
    if (d.acceptor) {
        boost::system::error_code ec;
        d.acceptor->close(ec);
    }
    {
        std::lock_guard lock(d.state_mutex);
        d.stopped = true;
    }
    d.state_cv.notify_all();
}

void Server::wait() {
    std::unique_lock lock(impl_->state_mutex);
    impl_->state_cv.wait(lock, [&] { return impl_->stopped; });
}

MetricsStore& Server::metrics() {
    return impl_->metrics;
}

RatingStore& Server::ratings() {
    return impl_->ratings;
}

} // namespace riverecho::gateway
