#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace kinhom {

// Process-wide worker count.  Defaults to 1 so that library results do not
// depend on the machine; the CLI raises it via --jobs.
inline int& parallel_jobs_storage() {
    static int jobs = 1;
    return jobs;
}
inline int parallel_jobs() { return parallel_jobs_storage(); }
inline void set_parallel_jobs(int jobs) { parallel_jobs_storage() = jobs < 1 ? 1 : jobs; }

// Chunked parallel map over [0, n).  The chunk partition is a function of n
// only, never of the thread count, so per-chunk results (and any reductions
// done chunk-by-chunk afterwards) are deterministic.
inline void parallel_for(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& body) {
    const int jobs = parallel_jobs();
    if (jobs <= 1 || n < 2048) {
        body(0, n);
        return;
    }
    const std::size_t chunk = 16384;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t c = cursor.fetch_add(1);
            if (c >= nchunks) return;
            const std::size_t lo = c * chunk;
            body(lo, std::min(n, lo + chunk));
        }
    };
    const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(jobs), nchunks);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace kinhom
