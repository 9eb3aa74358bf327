#pragma once

#include <cstdint>

namespace vam {

// Global worker cap for the OpenMP kernels. 1 = serial, 0 = OpenMP default.
// Every parallel loop in the project is deterministic by construction (fixed
// work decomposition, no shared accumulation order), so results are identical
// at any thread count; the serial path exists as the reference for tests and
// the benchmark tool.
void set_max_threads(int n);
int max_threads();

namespace detail {
void parallel_for_impl(std::int64_t n, void* ctx, void (*body)(void*, std::int64_t));
}

// Runs body(i) for i in [0, n). Iterations must be independent.
template <class F>
void parallel_for(std::int64_t n, F&& body) {
    auto thunk = [](void* ctx, std::int64_t i) { (*static_cast<F*>(ctx))(i); };
    detail::parallel_for_impl(n, &body, thunk);
}

template <class F>
void serial_for(std::int64_t n, F&& body) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace vam
