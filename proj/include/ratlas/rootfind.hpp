// rootfind.hpp — Newton (with Muller fallback) for zeros of the resolvent
// functions, multi-seed search, and the negative real eigenvalue.

#pragma once

#include <optional>
#include <vector>

#include "ratlas/resolvent.hpp"
#include "ratlas/types.hpp"

namespace ratlas::rootfind {

struct SolveOptions {
    double tol{1e-12};
    int max_iter{60};
    int stagnation_window{8};  // Newton steps without progress before Muller
    resolvent::EvalOptions eval{};
};

// Newton iteration with analytic derivative; falls back to Muller's
// three-point parabola on derivative stagnation. Throws NoConvergence or
// PoleCapture.
RootResult newton(resolvent::FnKind fn, const ModelParams& p,
                  const CouplingFamily& fam, ComplexEnergy seed,
                  const SolveOptions& opts = {});

// Same, recording |f| after each iterate (convergence-order tests).
RootResult newton_traced(resolvent::FnKind fn, const ModelParams& p,
                         const CouplingFamily& fam, ComplexEnergy seed,
                         const SolveOptions& opts,
                         std::vector<double>& residual_trace);

struct SeedStrategy {
    bool dressed_seeds{true};     // near 1+delta (atomic) and near 1 (photonic)
    bool pole_ring_seeds{true};   // rings around the weight pole 1 - i mu
    std::vector<ComplexEnergy> extra_seeds{};
    SolveOptions solve{};
};

// All second-sheet zeros reachable from the seed battery, deduplicated
// (zeros closer than 1e-8 merge). kappa = 0 returns the lone first-sheet
// zero at 1 + delta. Never throws; unreachable seeds are dropped.
std::vector<RootResult> find_all(const ModelParams& p, const CouplingFamily& fam,
                                 const SeedStrategy& strategy = {});

// Bisection for a first-sheet zero on the negative real axis. Returns the
// eigenvalue position or nothing if no sign change exists in the bracket
// [-1e3, -1e-12].
std::optional<double> negative_real_eigenvalue(
    const ModelParams& p, const CouplingFamily& fam,
    const resolvent::EvalOptions& eval = {});

} // namespace ratlas::rootfind
