// types.hpp — domain value types: parameters, roots, trajectories

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ratlas/errors.hpp"

namespace ratlas {

// Dimensionless complex energy. Re = energy, -2*Im = decay width.
using ComplexEnergy = std::complex<double>;

inline bool is_finite(ComplexEnergy z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

enum class Sheet { Physical, Second };
enum class Label { Unclassified, Standard, Nonstandard };

inline const char* to_string(Sheet s) noexcept {
    return s == Sheet::Physical ? "physical" : "second";
}
inline const char* to_string(Label l) noexcept {
    switch (l) {
        case Label::Standard:    return "standard";
        case Label::Nonstandard: return "nonstandard";
        default:                 return "unclassified";
    }
}

// The knobs of the dimensionless two-level model: coupling kappa >= 0,
// half-width mu > 0, detuning delta in (-1, inf). energy_scale (eV) is
// carried only for unit conversion on output.
struct ModelParams {
    double kappa{0.0};
    double mu{0.01};
    double delta{0.0};
    std::optional<double> energy_scale{};
};

ModelParams make_params(double kappa, double mu, double delta,
                        std::optional<double> energy_scale = std::nullopt);

// A located zero of the resolvent function (or of its continuation).
struct RootResult {
    ComplexEnergy zeta{};
    double residual{0.0};
    int iterations{0};
    Sheet sheet{Sheet::Second};
    Label label{Label::Unclassified};
};

enum class VaryParam { Kappa, Mu, Delta };

inline const char* to_string(VaryParam v) noexcept {
    switch (v) {
        case VaryParam::Kappa: return "kappa";
        case VaryParam::Mu:    return "mu";
        default:               return "delta";
    }
}

struct TrajectorySample {
    double param{0.0};
    RootResult root{};
};

// Ordered list of (parameter value, zero) pairs from a continuation run.
struct Trajectory {
    VaryParam param_name{VaryParam::Kappa};
    std::vector<TrajectorySample> samples;
    bool continuity_ok{true};
    // set instead of throwing when tracking is allowed to return partial data
    std::optional<double> lost_at{};
};

} // namespace ratlas
