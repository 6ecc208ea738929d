#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "enclose/interval.hpp"

namespace enclose {

// Runs independent chunks of work on up to `threads` OS threads. Workers
// inherit the caller's rounding policy. Chunk results must be written to
// per-chunk slots; the executor imposes no ordering between chunks.
class Executor {
public:
    explicit Executor(unsigned threads = 1) : threads_(std::max(1u, threads)) {}

    unsigned threads() const noexcept { return threads_; }

    template <class Body>
    void for_each_chunk(std::size_t chunks, Body&& body) const
    {
        const std::size_t workers = std::min<std::size_t>(threads_, chunks);
        if (workers <= 1) {
            for (std::size_t c = 0; c < chunks; ++c) {
                body(c);
            }
            return;
        }

        const RoundingPolicy policy = current_rounding();
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;

        auto drain = [&] {
            RoundingScope scope(policy);
            try {
                for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
                    body(c);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(chunks);
            }
        };

        std::vector<std::thread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) {
            pool.emplace_back(drain);
        }
        drain();
        for (auto& t : pool) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

private:
    unsigned threads_;
};

} // namespace enclose
