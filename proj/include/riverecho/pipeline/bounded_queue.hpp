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

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <stop_token>

namespace riverecho::pipeline {

// Blocking FIFO with a fixed capacity. A full queue blocks the producer.
// Closing wakes everybody; consumers drain what is left, producers fail.
template <typename T>
class BoundedQueue {
public:
    explicit BoundedQueue(std::size_t capacity) : capacity_(capacity) {
        if (capacity == 0) {
            throw std::invalid_argument("queue capacity must be >= 1");
        }
    }

    BoundedQueue(const BoundedQueue&) = delete;
    BoundedQueue& operator=(const BoundedQueue&) = delete;

    // False when the queue was closed or the stop token fired first.
    bool push(T value, std::stop_token stop) {
        std::unique_lock lock(mutex_);
        if (items_.size() >= capacity_ && !closed_) {
            ++producer_waits_;
            not_full_.wait(lock, stop, [&] { return items_.size() < capacity_ || closed_; });
        }
        if (closed_ || stop.stop_requested()) {
            return false;
        }
        items_.push_back(std::move(value));
        high_water_ = std::max(high_water_, items_.size());
        not_empty_.notify_one();
        return true;
    }

    // Empty once the queue is closed and drained, or when stop fired.
    std::optional<T> pop(std::stop_token stop) {
        std::unique_lock lock(mutex_);
        not_empty_.wait(lock, stop, [&] { return !items_.empty() || closed_; });
        if (items_.empty() || stop.stop_requested()) {
            return std::nullopt;
        }
        T value = std::move(items_.front());
        items_.pop_front();
        not_full_.notify_one();
        return value;
    }

    void close() {
        {
            std::lock_guard lock(mutex_);
            closed_ = true;
        }
        not_empty_.notify_all();
        not_full_.notify_all();
    }

    std::size_t capacity() const { return capacity_; }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return items_.size();
    }

    std::size_t high_water() const {
        std::lock_guard lock(mutex_);
        return high_water_;
    }

    // Number of pushes that found the queue full.
    std::size_t producer_waits() const {
        std::lock_guard lock(mutex_);
        return producer_waits_;
    }

private:
    const std::size_t capacity_;
    mutable std::mutex mutex_;
    std::condition_variable_any not_empty_;
    std::condition_variable_any not_full_;
    std::deque<T> items_;
    bool closed_ = false;
    std::size_t high_water_ = 0;
    std::size_t producer_waits_ = 0;
};

} // namespace riverecho::pipeline
