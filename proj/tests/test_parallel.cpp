#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "ratlas/parallel.hpp"

using namespace ratlas;

TEST_CASE("parallel and serial loops produce identical results") {
    const std::size_t n = 1000;
    std::vector<double> a(n), b(n);
    auto body = [](std::vector<double>& out) {
        return [&out](std::size_t i) {
            out[i] = std::sin(0.01 * i) * std::sqrt(i + 1.0);
        };
    };
    par::for_each_index(n, body(a));
    par::for_each_index_serial(n, body(b));
    for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("exceptions from workers propagate") {
    CHECK_THROWS_AS(par::for_each_index(8,
                                        [](std::size_t i) {
                                            if (i == 3)
                                                throw std::runtime_error("boom");
                                        }),
                    std::runtime_error);
}

TEST_CASE("worker cap respects the environment variable") {
    setenv("RESONANCE_ATLAS_THREADS", "1", 1);
    CHECK(par::worker_cap() == 1);
    unsetenv("RESONANCE_ATLAS_THREADS");
    CHECK(par::worker_cap() >= 1);
}
