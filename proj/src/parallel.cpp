#include "ratlas/parallel.hpp"

#include <cstdlib>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ratlas::par {

int worker_cap() {
#ifdef _OPENMP
    int cap = omp_get_max_threads();
#else
    int cap = 1;
#endif
    if (const char* env = std::getenv("RESONANCE_ATLAS_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1 && n < cap) cap = n;
    }
    return cap > 0 ? cap : 1;
}

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void for_each_index_serial(std::size_t n,
                           const std::function<void(std::size_t)>& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body) {
#ifdef _OPENMP
    const int cap = worker_cap();
    if (cap > 1 && n > 1) {
        std::exception_ptr first_error = nullptr;
#pragma omp parallel for num_threads(cap) schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return;
    }
#endif
    for_each_index_serial(n, body);
}

} // namespace ratlas::par
