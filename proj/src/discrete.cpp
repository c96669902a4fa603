#include "ratlas/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ratlas/parallel.hpp"

namespace ratlas::discrete {

namespace {

void validate_n(int n) {
    if (n < 1) throw DomainError("excitation number n must be >= 1");
    if (n > 1000) throw DomainError("excitation number n capped at 1000");
}

} // namespace

DressedPair dressed_eigenvalues(int n, double kappa, double delta) {
    validate_n(n);
    if (kappa < 0.0) throw DomainError("kappa must be >= 0");
    const double s = std::sqrt(delta * delta + 4.0 * n * kappa * kappa);
    DressedPair out;
    out.n = n;
    out.zeta_minus = n + 0.5 * (delta - s);
    out.zeta_plus = n + 0.5 * (delta + s);
    if (kappa > 0.0 || delta != 0.0)
        out.mixing = dressed_eigenvectors(n, kappa, delta);
    return out;
}

DressedVectors dressed_eigenvectors(int n, double kappa, double delta) {
    validate_n(n);
    const double s = std::sqrt(delta * delta + 4.0 * n * kappa * kappa);
    const double zm = n + 0.5 * (delta - s);
    const double zp = n + 0.5 * (delta + s);
    if (std::abs(zm) < 1e-12 || std::abs(zp) < 1e-12)
        throw DegenerateError("dressed eigenvalue vanishes");

    // unnormalized eigenvector of [[n+delta, r],[r, n]] at zeta:
    // (r, zeta - n - delta) with r = sqrt(n) kappa
    const double r = std::sqrt(static_cast<double>(n)) * kappa;
    auto fill = [&](double zeta, double& atomic, double& photonic) {
        double va = r, vp = zeta - n - delta;
        if (va == 0.0 && vp == 0.0) { // kappa = 0 on the atomic branch
            va = 1.0;
            vp = 0.0;
        }
        const double nrm = std::hypot(va, vp);
        atomic = va / nrm;
        photonic = vp / nrm;
    };
    DressedVectors v;
    fill(zm, v.atomic_minus, v.photonic_minus);
    fill(zp, v.atomic_plus, v.photonic_plus);
    return v;
}

Mat4 discretized_matrix(double kappa, double mu, double delta) {
    const double k2 = kappa / 2.0;
    return Mat4{{{1.0 + delta, k2, kappa, k2},
                 {k2, 1.0 - mu, 0.0, 0.0},
                 {kappa, 0.0, 1.0, 0.0},
                 {k2, 0.0, 0.0, 1.0 + mu}}};
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    if (n < 1 || static_cast<int>(a.size()) != n * n)
        throw DomainError("jacobi_eigenvalues: bad dimensions");
    auto at = [&](int i, int j) -> double& { return a[i * n + j]; };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-30) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta =
                    0.5 * std::atan2(2.0 * apq, at(q, q) - at(p, p));
                const double c = std::cos(theta), s = std::sin(theta);
                const double app = at(p, p), aqq = at(q, q);
                at(p, p) = c * c * app + s * s * aqq - 2.0 * s * c * apq;
                at(q, q) = s * s * app + c * c * aqq + 2.0 * s * c * apq;
                at(p, q) = at(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = at(r, p), arq = at(r, q);
                    at(r, p) = at(p, r) = c * arp - s * arq;
                    at(r, q) = at(q, r) = s * arp + c * arq;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::array<double, 4> matrix_eigenvalues(const Mat4& m) {
    std::vector<double> a(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a[i * 4 + j] = m[i][j];
    const auto ev = jacobi_eigenvalues(std::move(a), 4);
    return {ev[0], ev[1], ev[2], ev[3]};
}

std::vector<std::array<double, 5>> eigencurves(double kappa, double mu,
                                               std::pair<double, double> delta_range,
                                               int steps, bool parallel) {
    if (steps < 2) throw DomainError("eigencurves: steps must be >= 2");
    const auto [d0, d1] = delta_range;
    std::vector<std::array<double, 5>> rows(steps);
    auto body = [&](std::size_t i) {
        const double d = d0 + (d1 - d0) * static_cast<double>(i) / (steps - 1);
        const auto ev = matrix_eigenvalues(discretized_matrix(kappa, mu, d));
        rows[i] = {d, ev[0], ev[1], ev[2], ev[3]};
    };
    if (parallel)
        par::for_each_index(rows.size(), body);
    else
        par::for_each_index_serial(rows.size(), body);
    return rows;
}

double min_gap(double kappa, double mu, std::pair<double, double> delta_range,
               int steps) {
    const auto rows = eigencurves(kappa, mu, delta_range, steps);
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& r : rows)
        for (int j = 1; j < 4; ++j) gap = std::min(gap, r[j + 1] - r[j]);
    return gap;
}

} // namespace ratlas::discrete
