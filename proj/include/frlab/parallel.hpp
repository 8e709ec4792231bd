#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace frlab {

inline int thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    int n = hw ? static_cast<int>(hw) : 1;
    if (const char* env = std::getenv("FRLAB_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

// Run fn(i) for i in [0, count). Work items write into preallocated slots, so
// the result is identical to the serial loop regardless of scheduling.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
    const int workers = std::min(thread_count(), std::max(count, 1));
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto body = [&] {
        int i;
        while ((i = next.fetch_add(1)) < count) {
            if (failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (failed.load() && err) std::rethrow_exception(err);
}

}  // namespace frlab
