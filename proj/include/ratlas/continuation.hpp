// continuation.hpp — predictor-corrector tracking of resonance zeros along
// parameter paths, kappa->0 classification, the critical-coupling
// (exceptional point) solver, and the weak/strong regime diagnosis.

#pragma once

#include <utility>

#include "ratlas/rootfind.hpp"
#include "ratlas/types.hpp"

namespace ratlas::continuation {

struct TrackOptions {
    double tol{1e-12};
    double jump_cap{0.2};        // absolute bound on |dzeta| per step
    double slope_factor{50.0};   // |dzeta| <= slope_factor*|dparam|*slope
    double min_step_fraction{1e-9};  // step underflow => TrackingLost
    // return the partial trajectory (lost_at set) instead of throwing
    bool partial_on_loss{false};
    resolvent::EvalOptions eval{};
};

// Track the zero starting at zero0 (verified at p0) while the chosen
// parameter moves to `stop` in `steps` nominal increments. Linear
// extrapolation predictor, Newton corrector, adaptive step halving.
Trajectory track(const ModelParams& p0, const CouplingFamily& fam,
                 VaryParam vary, double stop, int steps, ComplexEnergy zero0,
                 const TrackOptions& opts = {});

// Continue the zero along a complex-kappa polyline (branch-point detours).
// Samples are indexed by arc length along the path.
Trajectory track_kappa_path(const ModelParams& p0, const CouplingFamily& fam,
                            const std::vector<ComplexEnergy>& kappa_path,
                            int steps_per_segment, ComplexEnergy zero0,
                            const TrackOptions& opts = {});

// Geometric kappa->0 ladder (ratio 0.7 until kappa < 1e-5); Standard iff the
// limit lands within 1e-4 of 1 + delta. TrackingLost => Unclassified.
Label classify(const ModelParams& p, const CouplingFamily& fam,
               const RootResult& zero, int max_rungs = 64,
               const TrackOptions& opts = {});

// Same ladder, also reporting the zero's kappa->0 limit point.
std::pair<Label, ComplexEnergy> classify_limit(const ModelParams& p,
                                               const CouplingFamily& fam,
                                               const RootResult& zero,
                                               int max_rungs = 64,
                                               const TrackOptions& opts = {});

// Parameter point where the two resonances coalesce (simultaneous zero of
// f+ and its zeta-derivative); the weak/strong boundary.
struct ExceptionalPoint {
    double kappa_c{0.0};
    double delta_c{0.0};
    ComplexEnergy zeta_c{};
    double mu{0.0};
    std::pair<double, double> condition_residuals{0.0, 0.0}; // |f+|, |df+/dz|
};

ExceptionalPoint critical_coupling(double mu, const CouplingFamily& fam,
                                   std::optional<ComplexEnergy> init = {},
                                   const resolvent::EvalOptions& eval = {});

enum class Regime { StrongCoupling, WeakCoupling };

inline const char* to_string(Regime r) noexcept {
    return r == Regime::StrongCoupling ? "strong" : "weak";
}

struct RegimeReport {
    Regime regime{Regime::StrongCoupling};
    Trajectory branch_a;   // starts atomic-like at delta_range.first
    Trajectory branch_b;   // starts photon-like
};

// Sweep the detuning over delta_range tracking both zeros in lockstep.
// Strong coupling: real parts keep one sign ordering (avoided crossing);
// weak coupling: real parts cross. Throws DegenerateRegime when the zeros
// merge mid-sweep.
RegimeReport regime_diagnose(const ModelParams& p, const CouplingFamily& fam,
                             std::pair<double, double> delta_range, int steps,
                             const TrackOptions& opts = {});

} // namespace ratlas::continuation
