#include "lambda_entangle/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lambda_entangle::par {

namespace {

int env_thread_cap() {
    const char* raw = std::getenv("LAMBDA_ENTANGLE_THREADS");
    if (raw == nullptr) return 0;
    const int v = std::atoi(raw);
    return v > 0 ? v : 1;
}

std::atomic<int> g_override{0};

}  // namespace

int max_threads() {
    const int forced = g_override.load(std::memory_order_relaxed);
    if (forced > 0) return forced;
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    const int cap = env_thread_cap();
    if (cap > 0) n = std::min(n, cap);
    return std::max(n, 1);
}

void set_max_threads(int n) {
    g_override.store(std::max(n, 0), std::memory_order_relaxed);
}

bool parallel_enabled() {
    return max_threads() > 1;
}

std::pair<std::size_t, std::size_t> chunk_bounds(std::size_t n, std::size_t c) {
    const std::size_t begin = n * c / kReductionChunks;
    const std::size_t end = n * (c + 1) / kReductionChunks;
    return {begin, end};
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    const int nt = max_threads();
    if (nt <= 1 || n < 2) {
        body(0, n);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt)
    for (long c = 0; c < static_cast<long>(kReductionChunks); ++c) {
        const auto [begin, end] = chunk_bounds(n, static_cast<std::size_t>(c));
        if (begin < end) body(begin, end);
    }
#else
    body(0, n);
#endif
}

}  // namespace lambda_entangle::par
