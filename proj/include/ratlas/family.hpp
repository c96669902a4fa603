// family.hpp — built-in coupling-function families: real-axis spectral
// weights, their analytic continuations, pole inventories, normalization.

#pragma once

#include <memory>
#include <vector>

#include "ratlas/profiles.hpp"
#include "ratlas/types.hpp"

namespace ratlas {

enum class FamilyKind { LorentzianSquared, SimplePole, HydrogenCircular, UserRational };

// Which norm fixes the coupling-constant convention. Two-level-model families
// are unit vectors in L2(dk); hydrogen profiles are unit vectors under
// ||f||^2 = 2 int_0^inf f^2 dy/y. Mixing the two silently corrupts kappa.
enum class NormConvention { L2dk, WeightedDyOverY };

struct PoleEntry {
    ComplexEnergy location;
    int order;
};

class CouplingFamily {
public:
    static CouplingFamily lorentzian_squared();
    static CouplingFamily simple_pole();
    static CouplingFamily hydrogen_circular(int n);
    // Profile num(y)/den(y); den must have no real zeros and
    // deg num <= deg den - 1 so that the squared profile is integrable.
    static CouplingFamily user_rational(std::vector<double> num,
                                        std::vector<double> den);

    FamilyKind kind() const noexcept { return kind_; }
    NormConvention norm_convention() const noexcept { return norm_; }
    int hydrogen_n() const;
    const hydrogen::RationalProfile& profile() const; // HydrogenCircular only

    // Spectral weight on the real axis, without kernel or prefactor.
    // LorentzianSquared: (1+((y-1)/mu)^2)^-2. HydrogenCircular: G_n(y)^2 in
    // profile units. SimplePole: y^2/(1+y^2)^2. UserRational: profile^2.
    double weight(const ModelParams& p, double y) const;

    // Analytic continuation of weight(); throws PoleError inside the
    // exclusion disks around poles of the continued weight.
    ComplexEnergy weight_continuation(const ModelParams& p, ComplexEnergy z) const;
    ComplexEnergy weight_continuation_deriv(const ModelParams& p, ComplexEnergy z) const;

    // c such that c * weight is the L2(dk)-normalized squared coupling g^2
    // (L2(dk) families only).
    double density_prefactor(const ModelParams& p) const;

    // Signed coupling amplitude g(k) in units of k0 = 1; the square of the
    // normalized amplitude is density_prefactor * weight.
    double coupling_amplitude(const ModelParams& p, double k) const;

    // Poles of the continued weight in the lower half-plane, in the units of
    // the weight's own argument. For HydrogenCircular the entry records the
    // profile's pole order 2n-2 (the squared weight doubles it).
    std::vector<PoleEntry> lower_poles(const ModelParams& p) const;
    double pole_exclusion_radius(const ModelParams& p) const;

    // Real-axis feature abscissas and decay scale, used to seed quadrature.
    std::vector<double> feature_knots(const ModelParams& p) const;
    double tail_scale(const ModelParams& p) const;
    // |Im z| scale below which evaluation counts as "near the axis".
    double imaginary_feature_scale(const ModelParams& p) const;

private:
    CouplingFamily() = default;
    void ensure_positive_mu(const ModelParams& p) const;

    FamilyKind kind_{FamilyKind::LorentzianSquared};
    NormConvention norm_{NormConvention::L2dk};
    int n_{0};
    std::shared_ptr<const hydrogen::RationalProfile> profile_{};
    std::vector<double> num_{}, den_{};      // UserRational
    std::vector<PoleEntry> rational_poles_{};
    double l2_norm_sq_{1.0};                 // UserRational int p^2 dy
    double rational_scale_{1.0};
};

} // namespace ratlas
