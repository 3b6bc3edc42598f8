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

#include "riverecho/pipeline/session.hpp"

#include "riverecho/graph/prompt.hpp"
#include "riverecho/graph/retrieval.hpp"
#include "riverecho/pipeline/sentence_accumulator.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>

namespace riverecho::pipeline {

void validate(const PipelineConfig& config) {
    if (config.sample_rate <= 0) {
        throw Error("pipeline.sample_rate must be > 0");
    }
    if (config.target_fps <= 0) {
        throw Error("pipeline.target_fps must be > 0");
    }
    if (config.queue_capacity < 1) {
        throw Error("pipeline.queue_capacity must be >= 1");
    }
    if (config.output_capacity < 1) {
        throw Error("pipeline.output_capacity must be >= 1");
    }
    if (config.sentence_punctuation.empty()) {
        throw Error("pipeline.sentence_punctuation must not be empty");
    }
    if (config.retrieval_k == 0) {
        throw Error("pipeline.retrieval_k must be > 0");
    }
    if (config.retrieval_depth < 0 || config.retrieval_depth > 2) {
        throw Error("pipeline.retrieval_depth must be 0, 1 or 2");
    }
}

namespace {

bool blank(std::string_view s) {
    return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

// Closes a queue when the owning stage exits, however it exits.
template <typename Q>
struct CloseOnExit {
    Q& queue;
    ~CloseOnExit() { queue.close(); }
};

} // namespace

struct Session::State {
    State(SessionInput in, backends::BackendSet& b, const graph::KnowledgeGraph& g, PipelineConfig c)
        : input(std::move(in)), backends(b), graph(g), config(std::move(c)), out(config.output_capacity),
          tokens(config.queue_capacity), sentences(config.queue_capacity), audio(config.queue_capacity) {}

    SessionInput input;
    backends::BackendSet& backends;
    const graph::KnowledgeGraph& graph;
    PipelineConfig config;

    BoundedQueue<TimedEvent> out;
    BoundedQueue<std::string> tokens;
    BoundedQueue<Sentence> sentences;
    BoundedQueue<AudioBlock> audio;

    std::stop_source stages_stop;
    std::stop_source consumer_gone;

    std::mutex mutex; // guards trace, failure and event emission order
    SessionTrace trace;
    std::optional<StageFailure> failure;
    bool cancelled = false;

    std::mutex done_mutex;
    std::condition_variable done_cv;
    bool done = false;
    bool end_delivered = false;

    std::jthread supervisor;

    // Publishes one event. Returns false when the stages are stopping.
    bool emit(StageEvent event) {
        std::unique_lock lock(mutex);
        if (stages_stop.stop_requested()) {
            return false;
        }
        return publish(std::move(event), lock);
    }

    bool publish(StageEvent event, std::unique_lock<std::mutex>& lock) {
        (void)lock;
        const auto now = Clock::now();
        trace.events.push_back({trace.seconds_since_origin(now), std::string(event_type(event)), event_seq(event)});
        std::visit(
            [&](const auto& e) {
                using E = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<E, Token>) {
                    ++trace.tokens;
                } else if constexpr (std::is_same_v<E, Sentence>) {
                    ++trace.sentences;
                } else if constexpr (std::is_same_v<E, AudioBlock>) {
                    trace.audio_samples += e.samples.size();
                } else if constexpr (std::is_same_v<E, VideoFrame>) {
                    ++trace.frames;
                }
            },
            event);
        return out.push(TimedEvent{std::move(event), now}, consumer_gone.get_token());
    }

    void mark(const std::string& stage, bool start) {
        std::lock_guard lock(mutex);
        auto& span = trace.stages[stage];
        (start ? span.start : span.stop) = Clock::now();
    }

    void fail(std::string stage, std::string message) {
        {
            std::lock_guard lock(mutex);
            if (!failure) {
                failure = StageFailure{std::move(stage), std::move(message)};
            }
        }
        stop_all();
    }

    void stop_all() {
        stages_stop.request_stop();
        tokens.close();
        sentences.close();
        audio.close();
    }

    // Runs `body`, converting any exception into a stage failure.
    template <typename F>
    void guarded(const std::string& stage, F&& body) {
        try {
            body();
        } catch (const backends::StageError& e) {
            fail(e.stage(), e.what());
        } catch (const std::exception& e) {
            fail(stage, e.what());
        }
    }

    void run_head(std::stop_token stop) {
        CloseOnExit<BoundedQueue<std::string>> closer{tokens};
        std::string query;

        if (const auto* clip = std::get_if<backends::AudioClip>(&input)) {
            bool ok = false;
            guarded("asr", [&] {
                mark("asr", true);
                const auto start = Clock::now();
                query = backends.asr->transcribe(*clip, stop);
                const auto elapsed = to_seconds(Clock::now() - start);
                mark("asr", false);
                {
                    std::lock_guard lock(mutex);
                    trace.input_audio_seconds = clip->duration_seconds();
                    trace.asr_seconds = elapsed;
                }
                ok = !stop.stop_requested() && emit(TranscriptFinal{query});
            });
            if (!ok) {
                return;
            }
        } else {
            query = std::get<std::string>(input);
        }

        std::string prompt;
        bool ok = false;
        guarded("retrieval", [&] {
            mark("retrieval", true);
            graph::RetrievalContext context;
            if (!blank(query)) {
                context = graph::retrieve_context(graph, query, config.retrieval_k, config.retrieval_depth);
                prompt = graph::format_context_prompt(context, query, config.prompt_budget_chars);
            }
            mark("retrieval", false);
            ok = emit(ContextReady{std::move(context)});
        });
        if (!ok) {
            return;
        }

        guarded("llm", [&] {
            std::uint64_t seq = 0;
            {
                std::lock_guard lock(mutex);
                trace.stages["llm"].start = Clock::now();
                trace.llm_request = trace.stages["llm"].start;
            }
            backends.llm->stream(
                prompt,
                [&](std::string_view token) {
                    const auto now = Clock::now();
                    {
                        std::lock_guard lock(mutex);
                        if (!trace.first_token) {
                            trace.first_token = now;
                        }
                        trace.last_token = now;
                    }
                    if (!emit(Token{std::string(token), seq++})) {
                        return false;
                    }
                    return tokens.push(std::string(token), stop);
                },
                stop);
            mark("llm", false);
        });
    }

    void run_accumulator(std::stop_token stop) {
        CloseOnExit<BoundedQueue<Sentence>> closer{sentences};
        guarded("accumulator", [&] {
            SentenceAccumulator acc(config.sentence_punctuation);
            std::uint64_t seq = 0;
            const auto forward = [&](std::string text) {
                Sentence s{std::move(text), seq++};
                return emit(s) && sentences.push(std::move(s), stop);
            };
            bool started = false;
            while (auto token = tokens.pop(stop)) {
                if (!started) {
                    mark("accumulator", true);
                    started = true;
                }
                for (auto& s : acc.push(*token)) {
                    if (!forward(std::move(s))) {
                        return;
                    }
                }
            }
            if (stop.stop_requested()) {
                return;
            }
            if (auto rest = acc.flush()) {
                forward(std::move(*rest));
            }
            mark("accumulator", false);
        });
    }

    void run_tts(std::stop_token stop) {
        CloseOnExit<BoundedQueue<AudioBlock>> closer{audio};
        guarded("tts", [&] {
            std::uint64_t seq = 0;
            double busy = 0.0;
            bool started = false;
            while (auto sentence = sentences.pop(stop)) {
                if (!started) {
                    mark("tts", true);
                    started = true;
                }
                Clock::duration blocked{};
                bool keep_going = true;
                const auto call_start = Clock::now();
                backends.tts->synthesize(
                    sentence->text, config.sample_rate,
                    [&](std::vector<std::int16_t> samples) {
                        const auto t0 = Clock::now();
                        AudioBlock block{std::move(samples), config.sample_rate, seq++, sentence->seq};
                        keep_going = emit(block) && audio.push(std::move(block), stop);
                        blocked += Clock::now() - t0;
                        return keep_going;
                    },
                    stop);
                busy += to_seconds(Clock::now() - call_start - blocked);
                if (!keep_going || stop.stop_requested()) {
                    break;
                }
            }
            std::lock_guard lock(mutex);
            trace.tts_busy_seconds = busy;
            if (started && !stop.stop_requested()) {
                trace.stages["tts"].stop = Clock::now();
            }
        });
    }

    void run_render(std::stop_token stop) {
        guarded("render", [&] {
            double busy = 0.0;
            bool started = false;
            const double fps = config.target_fps;
            while (auto block = audio.pop(stop)) {
                if (!started) {
                    mark("render", true);
                    started = true;
                }
                Clock::duration blocked{};
                bool keep_going = true;
                const auto call_start = Clock::now();
                backends.renderer->render(
                    block->samples, block->sample_rate,
                    [&](std::uint64_t index) {
                        const auto t0 = Clock::now();
                        keep_going =
                            emit(VideoFrame{index, static_cast<double>(index) / fps, block->sentence_seq});
                        blocked += Clock::now() - t0;
                        return keep_going;
                    },
                    stop);
                busy += to_seconds(Clock::now() - call_start - blocked);
                if (!keep_going || stop.stop_requested()) {
                    break;
                }
            }
            std::lock_guard lock(mutex);
            trace.render_busy_seconds = busy;
            if (started && !stop.stop_requested()) {
                trace.stages["render"].stop = Clock::now();
            }
        });
    }

    void supervise() {
        const auto stop = stages_stop.get_token();
        {
            std::jthread head([this, stop] { run_head(stop); });
            std::jthread acc([this, stop] { run_accumulator(stop); });
            std::jthread tts([this, stop] { run_tts(stop); });
            std::jthread render([this, stop] { run_render(stop); });
        }

        std::unique_lock lock(mutex);
        trace.queues = {
            {"tokens", tokens.capacity(), tokens.high_water(), tokens.producer_waits()},
            {"sentences", sentences.capacity(), sentences.high_water(), sentences.producer_waits()},
            {"audio", audio.capacity(), audio.high_water(), audio.producer_waits()},
        };
        if (!failure && cancelled) {
            failure = StageFailure{"session", "cancelled"};
        }
        if (failure) {
            publish(*failure, lock);
        } else {
            publish(MetricsReport{compute_available_metrics(trace)}, lock);
        }
        publish(End{}, lock);
        {
            std::lock_guard done_lock(done_mutex);
            done = true;
        }
        done_cv.notify_all();
    }
};

Session::Session(SessionInput input, backends::BackendSet& backends, const graph::KnowledgeGraph& graph,
                 PipelineConfig config) {
    validate(config);
    if (!backends.asr || !backends.llm || !backends.tts || !backends.renderer) {
        throw Error("session requires asr, llm, tts and renderer backends");
    }
    state_ = std::make_unique<State>(std::move(input), backends, graph, std::move(config));
    state_->trace.origin = Clock::now();
    state_->trace.sample_rate = state_->config.sample_rate;
    state_->supervisor = std::jthread([s = state_.get()] { s->supervise(); });
}

Session::~Session() {
    if (!state_) {
        return;
    }
    {
        std::lock_guard lock(state_->mutex);
        state_->cancelled = true;
    }
    state_->stop_all();
    state_->consumer_gone.request_stop();
    state_->out.close();
    if (state_->supervisor.joinable()) {
        state_->supervisor.join();
    }
}

std::optional<TimedEvent> Session::next() {
    if (state_->end_delivered) {
        return std::nullopt;
    }
    auto event = state_->out.pop(std::stop_token{});
    if (!event) {
        return std::nullopt;
    }
    if (std::holds_alternative<End>(event->event)) {
        state_->end_delivered = true;
    }
    return event;
}

void Session::cancel() {
    {
        std::lock_guard lock(state_->mutex);
        state_->cancelled = true;
    }
    state_->stop_all();
}

const SessionTrace& Session::trace() const {
    std::unique_lock lock(state_->done_mutex);
    state_->done_cv.wait(lock, [&] { return state_->done; });
    return state_->trace;
}

std::vector<TimedEvent> run_session(SessionInput input, backends::BackendSet& backends,
                                    const graph::KnowledgeGraph& graph, const PipelineConfig& config,
                                    SessionTrace* trace) {
    Session session(std::move(input), backends, graph, config);
    std::vector<TimedEvent> events;
    while (auto e = session.next()) {
        events.push_back(std::move(*e));
    }
    if (trace) {
        *trace = session.trace();
    }
    return events;
}

SequentialTimings run_stages_sequentially(const SessionInput& input, backends::BackendSet& backends,
                                          const graph::KnowledgeGraph& graph, const PipelineConfig& config) {
    validate(config);
    const std::stop_token never;
    SequentialTimings t;
    const auto timed = [](double& slot, auto&& body) {
        const auto start = Clock::now();
        body();
        slot = to_seconds(Clock::now() - start);
    };

    std::string query;
    if (const auto* clip = std::get_if<backends::AudioClip>(&input)) {
        timed(t.asr, [&] { query = backends.asr->transcribe(*clip, never); });
    } else {
        query = std::get<std::string>(input);
    }

    std::string prompt;
    timed(t.retrieval, [&] {
        if (!blank(query)) {
            const auto ctx = graph::retrieve_context(graph, query, config.retrieval_k, config.retrieval_depth);
            prompt = graph::format_context_prompt(ctx, query, config.prompt_budget_chars);
        }
    });

    std::vector<std::string> tokens;
    timed(t.llm, [&] {
        backends.llm->stream(
            prompt,
            [&](std::string_view tok) {
                tokens.emplace_back(tok);
                return true;
            },
            never);
    });

    std::vector<std::string> sentences;
    timed(t.accumulator, [&] { sentences = accumulate_sentences(tokens, config.sentence_punctuation); });

    std::vector<std::vector<std::int16_t>> blocks;
    timed(t.tts, [&] {
        for (const auto& s : sentences) {
            backends.tts->synthesize(
                s, config.sample_rate,
                [&](std::vector<std::int16_t> b) {
                    blocks.push_back(std::move(b));
                    return true;
                },
                never);
        }
    });

    timed(t.render, [&] {
        for (const auto& b : blocks) {
            backends.renderer->render(b, config.sample_rate, [](std::uint64_t) { return true; }, never);
        }
    });
    return t;
}

} // namespace riverecho::pipeline
