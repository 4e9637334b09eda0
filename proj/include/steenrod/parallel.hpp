#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace steenrod {

/* Runs fn(0..count-1) on up to `jobs` worker threads.  Callers index into
 * preallocated result slots, so the merge is deterministic regardless of
 * completion order. */
inline void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& fn)
{
    if (jobs <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    size_t nthreads = std::min<size_t>(size_t(jobs), count);
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (size_t t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    fn(i);
                }
                catch (...) {
                    std::scoped_lock lock(error_mu);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

inline int default_jobs()
{
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

}  // namespace steenrod
