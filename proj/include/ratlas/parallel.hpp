// parallel.hpp — OpenMP-backed index loops for the embarrassingly parallel
// grid kernels (seed batteries, eigenvalue sweeps, field maps), with a
// serial twin kept for testing and benchmarking.

#pragma once

#include <cstddef>
#include <functional>

namespace ratlas::par {

// Worker cap: RESONANCE_ATLAS_THREADS when set, else the OpenMP default.
int worker_cap();

// Runs body(0..n-1); parallel when OpenMP is enabled and worker_cap() > 1.
// Exceptions thrown by body are collected and the first one rethrown.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body);

// Serial reference implementation with identical semantics.
void for_each_index_serial(std::size_t n,
                           const std::function<void(std::size_t)>& body);

bool openmp_enabled();

} // namespace ratlas::par
