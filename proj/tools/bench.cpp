// bench — compares the OpenMP grid kernels against their serial reference
// implementations: the 3-mode eigenvalue sweep and a second-sheet |f+|
// field map. Prints wall times and the max deviation between the two paths.

#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ratlas/discrete.hpp"
#include "ratlas/parallel.hpp"
#include "ratlas/resolvent.hpp"

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return static_cast<double>(clock()) / CLOCKS_PER_SEC;
#endif
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

void bench_eigencurves() {
    const int steps = 20000;
    double t0 = now();
    const auto par = ratlas::discrete::eigencurves(0.1, 0.01, {-0.5, 0.5},
                                                   steps, true);
    double t1 = now();
    const auto ser = ratlas::discrete::eigencurves(0.1, 0.01, {-0.5, 0.5},
                                                   steps, false);
    double t2 = now();

    std::vector<double> a, b;
    for (const auto& r : par) a.insert(a.end(), r.begin(), r.end());
    for (const auto& r : ser) b.insert(b.end(), r.begin(), r.end());
    std::printf("eigencurves (%d points):  parallel %.3fs  serial %.3fs  "
                "speedup %.2fx  max|diff| %.3g\n",
                steps, t1 - t0, t2 - t1, (t2 - t1) / (t1 - t0),
                max_abs_diff(a, b));
}

void bench_field_map() {
    using namespace ratlas;
    const auto fam = CouplingFamily::lorentzian_squared();
    const auto p = make_params(0.1, 0.01, 0.25);
    const int nx = 48, ny = 24;
    std::vector<double> vpar(nx * ny), vser(nx * ny);

    auto body = [&](std::vector<double>& out) {
        return [&p, &fam, &out, nx](std::size_t idx) {
            const int i = static_cast<int>(idx) % nx;
            const int j = static_cast<int>(idx) / nx;
            const ComplexEnergy z{0.7 + 0.7 * i / (nx - 1.0),
                                  -0.05 - 0.1 * j / (23.0)};
            out[idx] = std::abs(resolvent::eval_f_plus(p, fam, z));
        };
    };
    double t0 = now();
    par::for_each_index(vpar.size(), body(vpar));
    double t1 = now();
    par::for_each_index_serial(vser.size(), body(vser));
    double t2 = now();
    std::printf("|f+| field map (%dx%d):   parallel %.3fs  serial %.3fs  "
                "speedup %.2fx  max|diff| %.3g\n",
                nx, ny, t1 - t0, t2 - t1, (t2 - t1) / (t1 - t0),
                max_abs_diff(vpar, vser));
}

} // namespace

int main() {
    std::printf("workers: %d (OpenMP %s)\n", ratlas::par::worker_cap(),
                ratlas::par::openmp_enabled() ? "on" : "off");
    bench_eigencurves();
    bench_field_map();
    return 0;
}
