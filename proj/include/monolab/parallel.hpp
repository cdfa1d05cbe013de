#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "monolab/errors.hpp"

namespace monolab {

/// Worker count: explicit request if positive, else MONOLAB_THREADS, else
/// hardware concurrency (at least 1).
inline unsigned resolve_threads(unsigned requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MONOLAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Calls body(begin, end) over contiguous chunks of [0, n) on up to
/// `threads` workers. The first exception (by chunk order) is rethrown.
template <class Body>
void parallel_chunks(std::size_t n, unsigned threads, Body&& body) {
    if (n == 0) return;
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
    if (workers == 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(n, b + chunk);
        pool.emplace_back([&, w, b, e] {
            try {
                if (b < e) body(b, e);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Evaluates f(i) for every i in [0, n) into a vector, in parallel.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F&& f) {
    std::vector<T> out(n);
    parallel_chunks(n, threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) out[i] = f(i);
    });
    return out;
}

}  // namespace monolab
