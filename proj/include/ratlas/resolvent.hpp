// resolvent.hpp — evaluation of the resolvent functions whose zeros are the
// resonances: f on the first sheet, its continuation f+ across the cut R+
// (by the closed-form jump and, independently, by contour deformation), the
// hydrogen-form F, and their zeta-derivatives.

#pragma once

#include "ratlas/family.hpp"
#include "ratlas/types.hpp"

namespace ratlas::resolvent {

enum class ContinuationMethod { ClosedFormJump, DeformedContour, CrossChecked };

// Two circulating closed forms for the continuation term of the
// LorentzianSquared family. DensitySum is the one consistent with cut
// continuity and the deformed contour; PoleDifference is kept as the
// cross-checked alternate.
enum class JumpForm { DensitySum, PoleDifference };

struct EvalOptions {
    double quad_rel_tol{1e-10};
    double quad_abs_tol{1e-13};
    ContinuationMethod continuation_method{ContinuationMethod::ClosedFormJump};
    // below this |Im zeta| (with Re zeta >= 0) direct evaluation is refused
    double cut_guard{1e-9};
};

enum class FnKind { FirstSheet, SecondSheet, Hydrogen };

// f(kappa, mu, delta, zeta): first-sheet function, analytic off R+.
ComplexEnergy eval_f(const ModelParams& p, const CouplingFamily& fam,
                     ComplexEnergy zeta, const EvalOptions& opts = {});

// Exact partial-fraction evaluation of f for the LorentzianSquared family,
// Im zeta > 0. Independent of the quadrature path; serves as its oracle.
ComplexEnergy residue_closed_form(const ModelParams& p, ComplexEnergy zeta);

// Second-sheet continuation. For Im zeta >= 0 this is eval_f (same code
// path); below the axis it adds the continued-density jump, or integrates a
// deformed contour, per opts.continuation_method.
ComplexEnergy eval_f_plus(const ModelParams& p, const CouplingFamily& fam,
                          ComplexEnergy zeta, const EvalOptions& opts = {});

// Independent continuation by deforming the y-path below zeta while staying
// above the weight's poles. Valid for Re zeta > 0 and
// 0 > Im zeta > -0.8 * (pole depth); otherwise throws StripError.
ComplexEnergy eval_f_plus_contour(const ModelParams& p,
                                  const CouplingFamily& fam,
                                  ComplexEnergy zeta,
                                  const EvalOptions& opts = {});

// Hydrogen-form resolvent in level-spacing units for the circular transition
// n -> n-1; below the axis the jump-corrected (second sheet) value.
ComplexEnergy eval_F_hydrogen(int n, double kappa_n, double mu_n,
                              ComplexEnergy zeta, const EvalOptions& opts = {});

// d/dzeta of the selected function, by differentiation under the integral.
ComplexEnergy deriv_zeta(FnKind kind, const ModelParams& p,
                         const CouplingFamily& fam, ComplexEnergy zeta,
                         const EvalOptions& opts = {});

// Value and derivative in one call (root-finder workhorse).
std::pair<ComplexEnergy, ComplexEnergy> eval_pair(FnKind kind,
                                                  const ModelParams& p,
                                                  const CouplingFamily& fam,
                                                  ComplexEnergy zeta,
                                                  const EvalOptions& opts = {});

// Which branch of the multivalued self-energy to evaluate. Auto follows the
// physical sheet convention (second sheet below the axis); First/Second pin
// the germ explicitly, which path-continuation across the cut needs.
enum class SheetSelect { Auto, First, Second };

// kappa-independent self-energy:
//   f+(zeta) = zeta - (1+delta) - kappa^2 * S(zeta)
// deriv_order in {0,1,2} selects S, S', S''. Used by the exceptional-point
// solver and the complex-coupling tracker.
ComplexEnergy self_energy_splus(const ModelParams& p, const CouplingFamily& fam,
                                ComplexEnergy zeta, const EvalOptions& opts,
                                int deriv_order,
                                SheetSelect sheet = SheetSelect::Auto);

// Continuation term ("jump") added to f below the axis.
ComplexEnergy family_jump(const ModelParams& p, const CouplingFamily& fam,
                          ComplexEnergy zeta);
// The two closed forms for the LorentzianSquared jump (see JumpForm).
ComplexEnergy lorentzian_jump(const ModelParams& p, ComplexEnergy zeta,
                              JumpForm form);

} // namespace ratlas::resolvent
