// hydrogen.hpp — circular-transition constants of the hydrogen atom
// (D_n, alpha_n, beta_n, mu_n, kappa_n), the 2p->1s resonances, and
// lifetime conversion.

#pragma once

#include <utility>

#include "ratlas/profiles.hpp"
#include "ratlas/resolvent.hpp"
#include "ratlas/types.hpp"

namespace ratlas::hydrogen {

// Pinned physical constants (eV / nm / s units).
struct Constants {
    static constexpr double E_I = 13.6057;          // ionization energy, eV
    static constexpr double hbar_c = 197.327;       // eV nm
    static constexpr double a0 = 0.0529177;         // Bohr radius, nm
    static constexpr double alpha_fs = 1.0 / 137.036;
    static constexpr double hbar = 6.58212e-16;     // eV s
};

// Everything attached to the circular transition |n,n-1,0> -> |n-1,n-2,0>.
struct HydrogenTransition {
    int n{2};
    double D_n{0.0};
    double alpha_n{0.0};
    double beta_n{0.0};
    double mu_n{0.0};
    double kappa_n{0.0};
    double level_spacing_eV{0.0};   // E_I (1/(n-1)^2 - 1/n^2)
    RationalProfile profile{};      // phi_n (unnormalized; .norm carries it)
};

// Builds all transition constants; combinatorial factors accumulate in the
// log domain so large n cannot overflow.
HydrogenTransition transition(int n);

// Standard and nonstandard zeros of the continued hydrogen resolvent F for
// the transition n -> n-1 (verified against reference values at n = 2).
std::pair<RootResult, RootResult> hydrogen_resonances(
    int n, const resolvent::EvalOptions& opts = {});

// Lifetime from a resonance position: per-channel width |Im zeta| * E,
// total width = channels * that, tau = hbar / total.
double lifetime_seconds(ComplexEnergy zeta, const HydrogenTransition& t,
                        int polarization_channels);

} // namespace ratlas::hydrogen
