// parallel.hpp — thread-cap handling and deterministic work partitioning.
//
// Every parallel kernel in this library partitions its index range into
// kReductionChunks fixed chunks and combines per-chunk results in index order,
// so serial and OpenMP execution produce bit-identical results for any thread
// count. LAMBDA_ENTANGLE_THREADS caps the OpenMP team size.
#pragma once

#include <cstddef>
#include <functional>

namespace lambda_entangle::par {

inline constexpr std::size_t kReductionChunks = 64;

int max_threads();            // min(OpenMP default, LAMBDA_ENTANGLE_THREADS)
void set_max_threads(int n);  // programmatic override; n <= 1 forces serial
bool parallel_enabled();      // max_threads() > 1

// [begin, end) bounds of chunk c when n items are split kReductionChunks ways.
std::pair<std::size_t, std::size_t> chunk_bounds(std::size_t n, std::size_t c);

// Runs body over disjoint ranges covering [0, n); ranges never overlap, so
// per-index writes are race-free and deterministic.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace lambda_entangle::par
