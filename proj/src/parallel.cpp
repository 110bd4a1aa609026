#include "ppra/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ppra {

namespace {
std::atomic<int> g_workers{0};
}

int hardware_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int default_workers() {
    int w = g_workers.load(std::memory_order_relaxed);
    return w > 0 ? w : hardware_workers();
}

void set_default_workers(int workers) {
    g_workers.store(workers, std::memory_order_relaxed);
}

void parallel_chunks(std::int64_t n, std::int64_t chunk,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn,
                     int workers) {
    if (n <= 0) return;
    if (chunk <= 0) chunk = 1;
    const std::int64_t n_chunks = (n + chunk - 1) / chunk;
    if (workers <= 0) workers = default_workers();
    if (workers > n_chunks) workers = static_cast<int>(n_chunks);

    if (workers <= 1) {
        for (std::int64_t c = 0; c < n_chunks; ++c) {
            const std::int64_t b = c * chunk;
            fn(c, b, std::min(n, b + chunk));
        }
        return;
    }

    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::int64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks || failed.load(std::memory_order_relaxed)) return;
            const std::int64_t b = c * chunk;
            try {
                fn(c, b, std::min(n, b + chunk));
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ppra
