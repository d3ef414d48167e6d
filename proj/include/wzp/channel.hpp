#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>

namespace wzp {

// Bounded single-producer/single-consumer friendly channel. push() blocks
// while the channel is full, giving the pipeline backpressure; the recorded
// high-water mark lets tests prove the buffer bound held.
template <typename T>
class BoundedChannel {
public:
    explicit BoundedChannel(std::size_t capacity) : capacity_(capacity ? capacity : 1) {}

    // Returns false if the channel was closed before the item could be queued.
    bool push(T item) {
        std::unique_lock lock(mutex_);
        not_full_.wait(lock, [&] { return queue_.size() < capacity_ || closed_; });
        if (closed_) return false;
        queue_.push_back(std::move(item));
        if (queue_.size() > high_water_) high_water_ = queue_.size();
        not_empty_.notify_one();
        return true;
    }

    // Blocks until an item is available; nullopt once closed and drained.
    std::optional<T> pop() {
        std::unique_lock lock(mutex_);
        not_empty_.wait(lock, [&] { return !queue_.empty() || closed_; });
        if (queue_.empty()) return std::nullopt;
        T item = std::move(queue_.front());
        queue_.pop_front();
        not_full_.notify_one();
        return item;
    }

    void close() {
        std::lock_guard lock(mutex_);
        closed_ = true;
        not_empty_.notify_all();
        not_full_.notify_all();
    }

    std::size_t high_water() const {
        std::lock_guard lock(mutex_);
        return high_water_;
    }

    std::size_t capacity() const { return capacity_; }

private:
    mutable std::mutex mutex_;
    std::condition_variable not_empty_;
    std::condition_variable not_full_;
    std::deque<T> queue_;
    std::size_t capacity_;
    std::size_t high_water_ = 0;
    bool closed_ = false;
};

}  // namespace wzp
