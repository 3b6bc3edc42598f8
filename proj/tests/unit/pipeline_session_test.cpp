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
#include "riverecho/backends/wav.hpp"
#include "riverecho/pipeline/session.hpp"
#include "riverecho/pipeline/trace.hpp"

#include "support/event_checks.hpp"
#include "support/fixtures.hpp"

#include <catch_amalgamated.hpp>

using namespace riverecho;
using namespace riverecho::pipeline;
using testing::count_type;
using testing::session_violations;
using testing::without_times;

namespace {

const std::string kQuery = "黄河从哪里发源？";

std::string violations_text(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& line : v) {
        s += line + "\n";
    }
    return s;
}

} // namespace

TEST_CASE("a text query starts with the retrieved context") {
    auto backends = testing::stub_backends();
    SessionTrace trace;
    const auto timed = run_session(kQuery, backends, testing::fixture_graph(), {}, &trace);
    const auto events = without_times(timed);
    REQUIRE_FALSE(events.empty());
    CHECK(std::holds_alternative<ContextReady>(events.front()));
    const auto problems = session_violations(events);
    INFO(violations_text(problems));
    CHECK(problems.empty());

    const auto& ctx = std::get<ContextReady>(events.front()).context;
    REQUIRE_FALSE(ctx.chunks.empty());
    CHECK(testing::joined_tokens(events).find("《" + ctx.chunks.front().book_title + "》") != std::string::npos);

    CHECK(trace.tokens == count_type(events, "token"));
    CHECK(trace.sentences == count_type(events, "sentence"));
    CHECK(trace.frames == count_type(events, "frame"));
    for (std::size_t i = 1; i < timed.size(); ++i) {
        CHECK(timed[i - 1].at <= timed[i].at);
    }
}

TEST_CASE("a spoken query starts with the transcript") {
    auto backends = testing::stub_backends();
    const auto clip = backends::make_fixture_clip(kQuery, 2.0);
    SessionTrace trace;
    const auto events = without_times(run_session(clip, backends, testing::fixture_graph(), {}, &trace));
    REQUIRE(std::holds_alternative<TranscriptFinal>(events.front()));
    CHECK(std::get<TranscriptFinal>(events.front()).text == kQuery);
    testing::SessionExpectations expect;
    expect.spoken_input = true;
    const auto problems = session_violations(events, expect);
    INFO(violations_text(problems));
    CHECK(problems.empty());
    CHECK(trace.input_audio_seconds == Catch::Approx(2.0));
}

TEST_CASE("audio accounting matches the per-sentence tts durations") {
    auto backends = testing::stub_backends();
    const auto events = without_times(run_session(kQuery, backends, testing::fixture_graph()));
    std::size_t expected = 0;
    for (const auto& s : testing::sentences_of(events)) {
        expected += backends::StubTts::sample_count(s, 16000, 0.25);
    }
    std::size_t got = 0;
    for (const auto& e : events) {
        if (const auto* a = std::get_if<AudioBlock>(&e)) {
            got += a->samples.size();
        }
    }
    CHECK(got == expected);
}

TEST_CASE("sessions are deterministic apart from timing") {
    auto a = testing::stub_backends();
    auto b = testing::stub_backends();
    const auto first = without_times(run_session(kQuery, a, testing::fixture_graph()));
    const auto second = without_times(run_session(kQuery, b, testing::fixture_graph()));
    CHECK(first.size() == second.size());
    CHECK(testing::streams_by_type(first) == testing::streams_by_type(second));
    CHECK(first.front() == second.front());
    CHECK(first.back() == second.back());
}

TEST_CASE("a tts failure on the second sentence keeps the first sentence's audio") {
    backends::StubTtsOptions tts;
    tts.fail_on_call = 2;
    auto backends = testing::stub_backends(backends::StubPacing::unpaced(), {}, tts);
    const auto events = without_times(run_session(kQuery, backends, testing::fixture_graph()));
    REQUIRE(events.size() >= 2);
    CHECK(std::holds_alternative<End>(events.back()));
    REQUIRE(std::holds_alternative<StageFailure>(events[events.size() - 2]));
    CHECK(std::get<StageFailure>(events[events.size() - 2]).stage == "tts");
    CHECK(count_type(events, "metrics") == 0);

    const auto sentences = testing::sentences_of(events);
    REQUIRE_FALSE(sentences.empty());
    std::size_t first_sentence_samples = 0;
    for (const auto& e : events) {
        if (const auto* a = std::get_if<AudioBlock>(&e)) {
            CHECK(a->sentence_seq == 0);
            first_sentence_samples += a->samples.size();
        }
    }
    CHECK(first_sentence_samples == backends::StubTts::sample_count(sentences[0], 16000, 0.25));
    const auto problems = session_violations(events);
    INFO(violations_text(problems));
    CHECK(problems.empty());
}

TEST_CASE("unrecognized audio fails in the asr stage") {
    auto backends = testing::stub_backends();
    auto clip = backends::make_fixture_clip(kQuery, 1.0);
    clip.transcript_tag.reset();
    const auto events = without_times(run_session(clip, backends, testing::fixture_graph()));
    REQUIRE(events.size() == 2);
    CHECK(std::get<StageFailure>(events[0]).stage == "asr");
    CHECK(std::holds_alternative<End>(events[1]));
}

TEST_CASE("an empty query gets the fallback answer") {
    auto backends = testing::stub_backends();
    const auto events = without_times(run_session(std::string(), backends, testing::fixture_graph()));
    CHECK(std::get<ContextReady>(events.front()).context.empty());
    CHECK(testing::joined_tokens(events) == backends::kStubFallbackAnswer);
    CHECK(session_violations(events).empty());
}

TEST_CASE("cancelling a paced session ends it promptly") {
    auto backends = testing::stub_backends(backends::StubPacing{});
    Session session(kQuery, backends, testing::fixture_graph());
    std::vector<StageEvent> events;
    const auto start = Clock::now();
    while (auto e = session.next()) {
        events.push_back(e->event);
        if (std::holds_alternative<Token>(e->event) && count_type(events, "token") == 3) {
            session.cancel();
        }
    }
    CHECK(to_seconds(Clock::now() - start) < 5.0);
    REQUIRE(events.size() >= 2);
    CHECK(std::holds_alternative<End>(events.back()));
    const auto& failure = std::get<StageFailure>(events[events.size() - 2]);
    CHECK(failure.stage == "session");
    CHECK(failure.message == "cancelled");
    CHECK_FALSE(session.next());
}

TEST_CASE("destroying an unfinished session does not hang") {
    auto backends = testing::stub_backends(backends::StubPacing{});
    const auto start = Clock::now();
    {
        Session session(kQuery, backends, testing::fixture_graph());
        CHECK(session.next());
    }
    CHECK(to_seconds(Clock::now() - start) < 5.0);
}

TEST_CASE("inter-stage queues never exceed their capacity") {
    PipelineConfig config;
    config.queue_capacity = 1;
    config.output_capacity = 2;
    auto backends = testing::stub_backends();
    SessionTrace trace;
    Session session(kQuery, backends, testing::fixture_graph(), config);
    std::vector<StageEvent> events;
    while (auto e = session.next()) {
        events.push_back(e->event);
    }
    CHECK(session_violations(events).empty());
    const auto& t = session.trace();
    REQUIRE_FALSE(t.queues.empty());
    std::size_t waits = 0;
    for (const auto& q : t.queues) {
        CHECK(q.high_water <= q.capacity);
        waits += q.producer_waits;
    }
    CHECK(waits > 0);
}

TEST_CASE("paced sessions overlap their stages") {
    auto backends = testing::stub_backends(backends::StubPacing{});
    const auto timed = run_session(kQuery, backends, testing::fixture_graph());
    std::optional<Clock::time_point> first_audio;
    Clock::time_point last_token{};
    for (const auto& e : timed) {
        if (std::holds_alternative<AudioBlock>(e.event) && !first_audio) {
            first_audio = e.at;
        }
        if (std::holds_alternative<Token>(e.event)) {
            last_token = e.at;
        }
    }
    REQUIRE(testing::sentences_of(without_times(timed)).size() >= 2);
    REQUIRE(first_audio);
    CHECK(*first_audio < last_token);
}

TEST_CASE("sequential stage timings cover every stage") {
    auto backends = testing::stub_backends(backends::StubPacing{});
    const auto clip = backends::make_fixture_clip(kQuery, 1.0);
    const auto t = run_stages_sequentially(clip, backends, testing::fixture_graph());
    CHECK(t.asr > 0.01);
    CHECK(t.llm > 0.5);
    CHECK(t.tts > 0.5);
    CHECK(t.render > 0.1);
    CHECK(t.total() >= t.asr + t.llm + t.tts + t.render);
}

TEST_CASE("pipeline configs are validated") {
    CHECK_NOTHROW(validate(PipelineConfig{}));
    PipelineConfig c;
    c.sample_rate = 0;
    CHECK_THROWS_AS(validate(c), Error);
    c = {};
    c.target_fps = -1;
    CHECK_THROWS_AS(validate(c), Error);
    c = {};
    c.queue_capacity = 0;
    CHECK_THROWS_AS(validate(c), Error);
    c = {};
    c.sentence_punctuation.clear();
    CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("event tags and sequence numbers") {
    CHECK(event_type(Token{"a", 3}) == "token");
    CHECK(event_seq(Token{"a", 3}) == 3);
    CHECK(event_type(VideoFrame{7, 0.28, 1}) == "frame");
    CHECK(event_seq(VideoFrame{7, 0.28, 1}) == 7);
    CHECK(event_type(StageFailure{"tts", "x"}) == "error");
    CHECK(event_type(End{}) == "end");
    CHECK(event_seq(End{}) == 0);
}
