#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qsym {

inline int default_thread_count() {
    if (const char* env = std::getenv("QSYM_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

/// Index-chunked parallel for. Tasks must be independent; results keyed by
/// index so output is deterministic regardless of scheduling.
template <class F>
inline void parallel_for(long n, int threads, F&& f) {
    if (n <= 0) return;
    if (threads <= 1 || n == 1) {
        for (long i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= n) break;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    int t = int(std::min<long>(threads, n));
    pool.reserve(t);
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace qsym
