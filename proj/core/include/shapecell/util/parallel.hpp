#pragma once

#include <algorithm>
#include <condition_variable>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace shapecell {

// Worker count: SHAPECELL_THREADS env var if set, else hardware concurrency
// capped at 8. A value of 1 runs everything inline.
inline int worker_count() {
    static const int n = [] {
        if (const char* env = std::getenv("SHAPECELL_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return static_cast<int>(std::min(v, 64l));
        }
        const unsigned hc = std::thread::hardware_concurrency();
        return static_cast<int>(std::min(hc == 0 ? 1u : hc, 8u));
    }();
    return n;
}

namespace detail {

// Minimal persistent pool. Jobs are (begin, end) index ranges; every index is
// processed by exactly one worker, so results do not depend on thread count.
// The first exception a body throws cancels the remaining chunks and is
// rethrown on the calling thread.
class ThreadPool {
public:
    static ThreadPool& instance() {
        static ThreadPool pool(worker_count());
        return pool;
    }

    void run(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body) {
        if (n <= 0) return;
        const int workers = static_cast<int>(threads_.size()) + 1;
        // Nested calls (a body that itself calls parallel_for) run inline.
        if (workers == 1 || n == 1 || inside_pool()) {
            body(0, n);
            return;
        }
        std::unique_lock<std::mutex> lock(mutex_);
        body_ = &body;
        total_ = n;
        chunk_ = std::max<std::int64_t>(1, (n + workers - 1) / workers);
        next_ = 0;
        taken_ = 0;
        completed_ = 0;
        error_ = nullptr;
        generation_++;
        lock.unlock();
        wake_.notify_all();

        // The calling thread participates too.
        inside_pool() = true;
        work_until_drained();
        inside_pool() = false;

        std::unique_lock<std::mutex> done_lock(mutex_);
        done_.wait(done_lock, [&] {
            return (next_ >= total_ || error_) && completed_ == taken_;
        });
        body_ = nullptr;
        const std::exception_ptr err = error_;
        error_ = nullptr;
        done_lock.unlock();
        if (err) std::rethrow_exception(err);
    }

private:
    explicit ThreadPool(int workers) {
        for (int i = 0; i < workers - 1; ++i) {
            threads_.emplace_back([this] { worker_loop(); });
        }
    }

    ~ThreadPool() {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            stop_ = true;
        }
        wake_.notify_all();
        for (auto& t : threads_) t.join();
    }

    static bool& inside_pool() {
        thread_local bool flag = false;
        return flag;
    }

    void worker_loop() {
        inside_pool() = true;
        std::uint64_t seen = 0;
        for (;;) {
            std::unique_lock<std::mutex> lock(mutex_);
            wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
            lock.unlock();
            work_until_drained();
        }
    }

    void work_until_drained() {
        for (;;) {
            std::int64_t begin;
            const std::function<void(std::int64_t, std::int64_t)>* body;
            {
                std::lock_guard<std::mutex> lock(mutex_);
                if (body_ == nullptr || error_ || next_ >= total_) return;
                begin = next_;
                next_ += chunk_;
                ++taken_;
                body = body_;
            }
            const std::int64_t end = std::min(begin + chunk_, total_);
            try {
                (*body)(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mutex_);
                if (!error_) error_ = std::current_exception();
            }
            {
                std::lock_guard<std::mutex> lock(mutex_);
                ++completed_;
            }
            done_.notify_all();
        }
    }

    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    const std::function<void(std::int64_t, std::int64_t)>* body_ = nullptr;
    std::int64_t total_ = 0;
    std::int64_t chunk_ = 0;
    std::int64_t next_ = 0;
    std::int64_t taken_ = 0;
    std::int64_t completed_ = 0;
    std::exception_ptr error_ = nullptr;
    std::uint64_t generation_ = 0;
    bool stop_ = false;
};

}  // namespace detail

// Runs body(begin, end) over disjoint chunks of [0, n). Each index is handled
// by exactly one thread, so any computation whose outputs are per-index
// disjoint is bit-deterministic regardless of SHAPECELL_THREADS.
inline void parallel_for(std::int64_t n,
                         const std::function<void(std::int64_t, std::int64_t)>& body) {
    detail::ThreadPool::instance().run(n, body);
}

}  // namespace shapecell
