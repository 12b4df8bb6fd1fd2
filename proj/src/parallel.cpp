#include "bhhg/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bhhg {

namespace {

std::atomic<std::size_t> g_threads{0};

std::size_t default_threads() {
    if (const char* env = std::getenv("BHHG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1)
            return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

} // namespace

std::size_t thread_count() {
    const std::size_t n = g_threads.load(std::memory_order_relaxed);
    return n > 0 ? n : default_threads();
}

void set_thread_count(std::size_t n) { g_threads.store(n, std::memory_order_relaxed); }

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn) {
    if (begin >= end)
        return;
    const std::size_t n_items = end - begin;
    const std::size_t n_workers = std::min(thread_count(), n_items);
    if (n_workers <= 1) {
        for (std::size_t i = begin; i < end; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{begin};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= end)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(end, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_workers - 1);
    for (std::size_t w = 1; w < n_workers; ++w)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();

    if (error)
        std::rethrow_exception(error);
}

} // namespace bhhg
