#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace tc {

// THETA_CRYSTAL_THREADS wins over the requested count; 0 means hardware concurrency.
inline int resolve_threads(int requested = 0) {
    if (const char* env = std::getenv("THETA_CRYSTAL_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return v;
        } catch (...) {
        }
    }
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

inline int& default_threads_ref() {
    static int n = 1;
    return n;
}
inline int default_threads() { return default_threads_ref(); }
inline void set_default_threads(int n) { default_threads_ref() = std::max(1, n); }

// f(i) for i in [0, n). Each index writes its own slot, so results do not depend on scheduling.
// Workers must not change the global MPFR precision.
template <class F>
void parallel_for(int n, F&& f, int threads = default_threads()) {
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < n; i += threads) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace tc
