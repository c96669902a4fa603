#include "ratlas/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ratlas/parallel.hpp"

namespace ratlas::rootfind {

namespace {

using Complex = ComplexEnergy;
using resolvent::FnKind;

void check_pole_capture(const ModelParams& p, const CouplingFamily& fam,
                        Complex z) {
    const bool hydro = fam.kind() == FamilyKind::HydrogenCircular;
    const double excl =
        hydro ? 1e-6 * p.mu : fam.pole_exclusion_radius(p);
    if (hydro) {
        if (std::abs(z - Complex{0.0, -p.mu}) < excl)
            throw PoleCapture("iterate entered a pole exclusion disk");
        return;
    }
    for (const auto& e : fam.lower_poles(p))
        if (std::abs(z - e.location) < excl)
            throw PoleCapture("iterate entered a pole exclusion disk");
}

RootResult solve(FnKind fn, const ModelParams& p, const CouplingFamily& fam,
                 Complex seed, const SolveOptions& opts,
                 std::vector<double>* trace) {
    if (!is_finite(seed)) throw DomainError("newton: seed must be finite");

    const bool hydro = fam.kind() == FamilyKind::HydrogenCircular;
    auto pole_distance = [&](Complex z) {
        if (hydro) return std::abs(z - Complex{0.0, -p.mu});
        double d = std::numeric_limits<double>::infinity();
        for (const auto& e : fam.lower_poles(p))
            d = std::min(d, std::abs(z - e.location));
        return d;
    };

    Complex z = seed;
    Complex z1{}, z2{};          // previous iterates (for Muller)
    Complex f1{}, f2{};
    double best = std::numeric_limits<double>::infinity();
    Complex best_z = seed;
    int stagnant = 0;
    bool muller_mode = false;

    for (int it = 1; it <= opts.max_iter; ++it) {
        check_pole_capture(p, fam, z);
        auto [fv, dv] = resolvent::eval_pair(fn, p, fam, z, opts.eval);
        const double r = std::abs(fv);
        if (trace) trace->push_back(r);
        if (r <= opts.tol) {
            Sheet sheet = z.imag() < 0.0 ? Sheet::Second : Sheet::Physical;
            if (fn == FnKind::FirstSheet) sheet = Sheet::Physical;
            return {z, r, it, sheet, Label::Unclassified};
        }
        if (r < 0.5 * best) {
            best = r;
            best_z = z;
            stagnant = 0;
        } else if (++stagnant >= opts.stagnation_window) {
            muller_mode = true;
        }

        Complex newton_step{};
        if (std::abs(dv) >= 1e-300) newton_step = -fv / dv;

        Complex step = newton_step;
        if (muller_mode && it >= 3 && z1 != z2 && z != z1) {
            // Muller: parabola through (z2,f2), (z1,f1), (z,fv)
            const Complex q = (z - z1) / (z1 - z2);
            const Complex A = q * fv - q * (1.0 + q) * f1 + q * q * f2;
            const Complex Bc =
                (2.0 * q + 1.0) * fv - (1.0 + q) * (1.0 + q) * f1 + q * q * f2;
            const Complex Cc = (1.0 + q) * fv;
            const Complex disc = std::sqrt(Bc * Bc - 4.0 * A * Cc);
            const Complex d1 = Bc + disc, d2 = Bc - disc;
            const Complex den = std::abs(d1) > std::abs(d2) ? d1 : d2;
            const Complex ms = -(z - z1) * 2.0 * Cc / den;
            if (is_finite(ms) && std::abs(ms) > 0.0) step = ms;
        }
        if (!is_finite(step) || std::abs(step) == 0.0)
            throw NoConvergence(
                "newton: step collapsed at the residual floor (best |f| = " +
                std::to_string(best) + ")");
        // cap the step near poles of the continued weight; an overshoot
        // across a pole catapults the iteration
        const double cap = std::min(1.0, 0.5 * pole_distance(z));
        if (std::abs(step) > cap && cap > 0.0) step *= cap / std::abs(step);

        z2 = z1; f2 = f1;
        z1 = z;  f1 = fv;
        z += step;
        if (!is_finite(z)) throw NoConvergence("newton: iterate diverged");
    }
    throw NoConvergence("newton: no convergence after max_iter (best |f| = " +
                        std::to_string(best) + ")");
}

} // namespace

RootResult newton(resolvent::FnKind fn, const ModelParams& p,
                  const CouplingFamily& fam, ComplexEnergy seed,
                  const SolveOptions& opts) {
    return solve(fn, p, fam, seed, opts, nullptr);
}

RootResult newton_traced(resolvent::FnKind fn, const ModelParams& p,
                         const CouplingFamily& fam, ComplexEnergy seed,
                         const SolveOptions& opts,
                         std::vector<double>& residual_trace) {
    residual_trace.clear();
    return solve(fn, p, fam, seed, opts, &residual_trace);
}

std::vector<RootResult> find_all(const ModelParams& p, const CouplingFamily& fam,
                                 const SeedStrategy& strategy) {
    if (p.kappa == 0.0) {
        // free theory: the lone zero of zeta - (1+delta) on the first sheet
        const double bare =
            fam.kind() == FamilyKind::HydrogenCircular ? 1.0 : 1.0 + p.delta;
        return {RootResult{{bare, 0.0}, 0.0, 0, Sheet::Physical,
                           Label::Unclassified}};
    }

    std::vector<Complex> seeds = strategy.extra_seeds;
    if (strategy.dressed_seeds) {
        const double s = std::sqrt(p.delta * p.delta + 4.0 * p.kappa * p.kappa);
        const double down = std::max(1e-6, 1e-2 * p.mu);
        seeds.push_back({1.0 + 0.5 * (p.delta + s), -down});
        seeds.push_back({1.0 + 0.5 * (p.delta - s), -down});
    }
    if (strategy.pole_ring_seeds) {
        // hydrogen pole entries are in profile units; zeta units scale by mu
        const double to_zeta =
            fam.kind() == FamilyKind::HydrogenCircular ? p.mu : 1.0;
        for (const auto& e : fam.lower_poles(p)) {
            const Complex pole = to_zeta * e.location;
            const double depth = std::abs(pole.imag());
            // ring radii: fractions of the pole depth plus a coupling-scaled
            // estimate of the near-pole zero distance
            std::vector<double> radii{0.05 * depth, 0.15 * depth, 0.5 * depth,
                                      1.0 * depth, 2.0 * depth};
            const Complex away = pole - Complex{1.0 + p.delta, 0.0};
            const double rhat =
                p.kappa * std::sqrt(4.0 * std::pow(depth, 3) /
                                    std::max(1e-9, std::abs(away)));
            radii.push_back(0.5 * rhat);
            radii.push_back(rhat);
            for (double r : radii) {
                for (int a = 0; a < 8; ++a) {
                    const double th = 2.0 * M_PI * a / 8.0;
                    const Complex s =
                        pole + r * Complex{std::cos(th), std::sin(th)};
                    if (s.imag() < 0.0) seeds.push_back(s);
                }
            }
        }
    }

    std::vector<std::optional<RootResult>> hits(seeds.size());
    par::for_each_index(seeds.size(), [&](std::size_t i) {
        try {
            RootResult r = newton(resolvent::FnKind::SecondSheet, p, fam,
                                  seeds[i], strategy.solve);
            if (r.zeta.imag() < 0.0 && std::abs(r.zeta) < 1e3)
                hits[i] = r;
        } catch (const Error&) {
            // unreachable seed; drop it
        }
    });

    std::vector<RootResult> out;
    for (const auto& h : hits) {
        if (!h) continue;
        bool dup = false;
        for (const auto& r : out)
            if (std::abs(r.zeta - h->zeta) < 1e-8) { dup = true; break; }
        if (!dup) out.push_back(*h);
    }
    std::sort(out.begin(), out.end(), [](const RootResult& a, const RootResult& b) {
        if (a.zeta.real() != b.zeta.real()) return a.zeta.real() < b.zeta.real();
        return a.zeta.imag() < b.zeta.imag();
    });
    return out;
}

std::optional<double> negative_real_eigenvalue(
    const ModelParams& p, const CouplingFamily& fam,
    const resolvent::EvalOptions& eval) {
    if (p.kappa == 0.0) return std::nullopt;

    auto f = [&](double x) {
        return resolvent::eval_f(p, fam, Complex{x, 0.0}, eval).real();
    };
    double lo = -1e3, hi = -1e-12;
    double flo = f(lo), fhi = f(hi);
    // f is strictly increasing on the negative axis; a zero in double range
    // exists iff the value at the inner endpoint is positive.
    if (fhi <= 0.0 || flo >= 0.0) return std::nullopt;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (fm < 0.0) { lo = mid; flo = fm; }
        else          { hi = mid; fhi = fm; }
        if (hi - lo < 1e-15 * std::abs(hi)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace ratlas::rootfind
