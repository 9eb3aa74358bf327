#include "vam/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vam {

namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }
int max_threads() { return g_max_threads.load(); }

namespace detail {

void parallel_for_impl(std::int64_t n, void* ctx, void (*body)(void*, std::int64_t)) {
    const int cap = g_max_threads.load();
    if (n <= 0) return;
#ifdef _OPENMP
    if (cap != 1 && n > 1) {
        // Exceptions may not cross the omp region; capture the first and
        // rethrow after the join.
        std::exception_ptr err = nullptr;
        std::mutex err_mu;
        const int nthreads = cap == 0 ? omp_get_max_threads() : cap;
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
        for (std::int64_t i = 0; i < n; ++i) {
            try {
                body(ctx, i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#else
    (void)cap;
#endif
    for (std::int64_t i = 0; i < n; ++i) body(ctx, i);
}

}  // namespace detail
}  // namespace vam
