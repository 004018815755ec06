#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace stri {

// Worker count: explicit argument > STRI_WORKERS env > hardware concurrency.
inline int resolve_workers(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("STRI_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Deterministic chunked reduction.  The item range is split into a fixed
// number of chunks that depends only on `items`, never on the worker count,
// and the per-chunk results are combined in chunk order.  Output is therefore
// bit-identical no matter how many threads run.
//
// chunk_fn(chunk_index, begin, end) -> T;  combine(acc, T) folds in order.
template <typename T, typename ChunkFn, typename CombineFn>
T chunked_reduce(std::int64_t items, ChunkFn&& chunk_fn, CombineFn&& combine, T init,
                 int workers = 0, std::int64_t max_chunks = 1024) {
    if (items <= 0) return init;
    std::int64_t chunks = std::min<std::int64_t>(items, max_chunks);
    std::int64_t per = (items + chunks - 1) / chunks;
    chunks = (items + per - 1) / per;

    std::vector<T> partial(static_cast<std::size_t>(chunks), init);
    int nw = std::min<std::int64_t>(resolve_workers(workers), chunks);

    if (nw <= 1) {
        for (std::int64_t c = 0; c < chunks; ++c) {
            std::int64_t b = c * per, e = std::min(items, b + per);
            partial[static_cast<std::size_t>(c)] = chunk_fn(c, b, e);
        }
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nw));
        for (int w = 0; w < nw; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    std::int64_t c = next.fetch_add(1);
                    if (c >= chunks) return;
                    std::int64_t b = c * per, e = std::min(items, b + per);
                    partial[static_cast<std::size_t>(c)] = chunk_fn(c, b, e);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    T acc = init;
    for (std::int64_t c = 0; c < chunks; ++c) acc = combine(acc, partial[static_cast<std::size_t>(c)]);
    return acc;
}

}  // namespace stri
