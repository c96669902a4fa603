#include <doctest.h>

#include <cmath>

#include "ratlas/resolvent.hpp"

using namespace ratlas;
using resolvent::EvalOptions;
using resolvent::FnKind;

namespace {
const CouplingFamily kLor = CouplingFamily::lorentzian_squared();
}

TEST_CASE("free theory: f = zeta - (1+delta)") {
    const auto p = make_params(0.0, 0.01, 0.25);
    const ComplexEnergy z{2.0, 1e-3};
    CHECK(std::abs(resolvent::eval_f(p, kLor, z) - (z - 1.25)) < 1e-15);
    CHECK_THROWS_AS(resolvent::eval_f(p, kLor, {2.0, 0.0}), CutError);
    // derivative is exactly 1
    CHECK(resolvent::deriv_zeta(FnKind::FirstSheet, p, kLor, z) ==
          ComplexEnergy{1.0, 0.0});
}

TEST_CASE("quadrature agrees with the partial-fraction oracle") {
    const auto p = make_params(0.1, 0.01, 0.25);
    const ComplexEnergy z{1.5, 0.5};
    const auto a = resolvent::eval_f(p, kLor, z);
    const auto b = resolvent::residue_closed_form(p, z);
    CHECK(std::abs(a - b) / std::abs(b) < 1e-10);

    const auto p2 = make_params(1.0, 0.5, 0.0);
    for (const ComplexEnergy w :
         {ComplexEnergy{0.2, 0.7}, ComplexEnergy{-1.0, 0.2},
          ComplexEnergy{2.5, 2.0}}) {
        const auto x = resolvent::eval_f(p2, kLor, w);
        const auto y = resolvent::residue_closed_form(p2, w);
        CHECK(std::abs(x - y) / std::abs(y) < 1e-10);
    }
}

TEST_CASE("oracle domain: upper half-plane only") {
    const auto p = make_params(0.1, 0.01, 0.25);
    CHECK_THROWS_AS(resolvent::residue_closed_form(p, {1.5, -0.5}),
                    DomainError);
    // kappa = 0 reduces to the bare term exactly
    const auto p0 = make_params(0.0, 0.01, 0.25);
    const ComplexEnergy z{0.3, 1.0};
    CHECK(std::abs(resolvent::residue_closed_form(p0, z) - (z - 1.25)) == 0.0);
}

TEST_CASE("integral term shrinks as the weight spreads") {
    // |f - (zeta - 1 - delta)| at zeta = i decreases over mu = 1, 10, 100
    const ComplexEnergy z{0.0, 1.0};
    double prev = 1e300;
    for (double mu : {1.0, 10.0, 100.0}) {
        const auto p = make_params(1.0, mu, 0.0);
        const double term =
            std::abs(resolvent::eval_f(p, kLor, z) - (z - 1.0));
        CHECK(term < prev);
        prev = term;
    }
}

TEST_CASE("sheet agreement above the axis is bitwise") {
    const auto p = make_params(0.1, 0.01, 0.25);
    const ComplexEnergy z{1.3, 0.1};
    const auto a = resolvent::eval_f(p, kLor, z);
    const auto b = resolvent::eval_f_plus(p, kLor, z);
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
}

TEST_CASE("second sheet is small near the reference zero positions") {
    const auto p = make_params(0.1, 0.01, 0.25);
    CHECK(std::abs(resolvent::eval_f_plus(p, kLor, {1.285, -2.7e-6})) < 1e-2);
    CHECK(std::abs(resolvent::eval_f_plus(p, kLor, {0.963, -9.8e-4})) < 1e-2);
    const auto p2 = make_params(0.1, 2.0, 0.25);
    CHECK(std::abs(resolvent::eval_f_plus(p2, kLor, {1.005, -2.095})) < 5e-2);
}

TEST_CASE("jump conventions: density sum is the continuation") {
    const auto p = make_params(0.1, 2.0, 0.25);
    // the general density rule coincides with the closed sum form
    for (const ComplexEnergy z :
         {ComplexEnergy{1.2, -0.7}, ComplexEnergy{0.6, -2.5}}) {
        const auto general = resolvent::family_jump(p, kLor, z);
        const auto sum =
            resolvent::lorentzian_jump(p, z, resolvent::JumpForm::DensitySum);
        CHECK(std::abs(general - sum) <= 1e-14 * std::abs(sum));
    }
    // cut continuity selects the sum form; the difference form breaks it
    EvalOptions eo;
    eo.cut_guard = 1e-10;
    for (double E : {0.7, 1.0, 1.3}) {
        const auto above = resolvent::eval_f(p, kLor, {E, 1e-9}, eo);
        const auto f_below = resolvent::eval_f(p, kLor, {E, -1e-9}, eo);
        const auto sum_below =
            f_below + resolvent::lorentzian_jump(p, {E, -1e-9},
                                                 resolvent::JumpForm::DensitySum);
        const auto diff_below =
            f_below + resolvent::lorentzian_jump(p, {E, -1e-9},
                                                 resolvent::JumpForm::PoleDifference);
        CHECK(std::abs(above - sum_below) < 1e-6);
        CHECK(std::abs(above - diff_below) > 1e-3);
    }
}

TEST_CASE("contour continuation: strip validity and agreement") {
    const auto p = make_params(0.1, 0.01, 0.25);
    const ComplexEnergy z{1.1, -0.005};
    const auto jump_route = resolvent::eval_f_plus(p, kLor, z);
    const auto contour_route = resolvent::eval_f_plus_contour(p, kLor, z);
    CHECK(std::abs(jump_route - contour_route) < 1e-8);

    CHECK_THROWS_AS(resolvent::eval_f_plus_contour(p, kLor, {1.1, -0.02}),
                    StripError);
    const auto p0 = make_params(0.0, 0.01, 0.25);
    const ComplexEnergy z2{1.1, -0.004};
    CHECK(std::abs(resolvent::eval_f_plus_contour(p0, kLor, z2) -
                   (z2 - 1.25)) < 1e-15);
}

TEST_CASE("cross-checked continuation accepts consistent methods") {
    const auto p = make_params(0.1, 0.01, 0.25);
    EvalOptions eo;
    eo.continuation_method = resolvent::ContinuationMethod::CrossChecked;
    CHECK_NOTHROW(resolvent::eval_f_plus(p, kLor, {1.1, -0.005}, eo));
    // outside the strip the jump value stands alone
    CHECK_NOTHROW(resolvent::eval_f_plus(p, kLor, {1.1, -0.5}, eo));
}

TEST_CASE("pole exclusion on the second sheet") {
    const auto p = make_params(0.1, 0.01, 0.25);
    CHECK_THROWS_AS(
        resolvent::eval_f_plus(p, kLor, ComplexEnergy{1.0, -0.01} +
                                            ComplexEnergy{1e-9, 0.0}),
        PoleError);
}

TEST_CASE("derivative against central differences") {
    const auto p = make_params(0.1, 0.01, 0.25);
    for (const ComplexEnergy z :
         {ComplexEnergy{1.5, 0.5}, ComplexEnergy{0.8, -0.3}}) {
        const double h = 1e-6;
        const auto d = resolvent::deriv_zeta(FnKind::SecondSheet, p, kLor, z);
        const auto fd = (resolvent::eval_f_plus(p, kLor, z + ComplexEnergy{h, 0}) -
                         resolvent::eval_f_plus(p, kLor, z - ComplexEnergy{h, 0})) /
                        (2.0 * h);
        CHECK(std::abs(d - fd) / std::abs(fd) < 1e-6);
    }
}

TEST_CASE("continued-weight derivative matches the closed form") {
    const auto p = make_params(0.1, 0.3, 0.25);
    const ComplexEnergy z{-0.5, -0.5};
    const double m2 = p.mu * p.mu;
    const ComplexEnergy den = m2 + (z - 1.0) * (z - 1.0);
    const ComplexEnergy expected = -4.0 * m2 * m2 * (z - 1.0) / (den * den * den);
    CHECK(std::abs(kLor.weight_continuation_deriv(p, z) - expected) <
          1e-13 * std::abs(expected));
    // and the assembled jump derivative agrees with finite differences
    const double h = 1e-7;
    const auto jd = (resolvent::family_jump(p, kLor, z + ComplexEnergy{h, 0}) -
                     resolvent::family_jump(p, kLor, z - ComplexEnergy{h, 0})) /
                    (2.0 * h);
    const auto analytic =
        resolvent::deriv_zeta(FnKind::SecondSheet, p, kLor, z) -
        resolvent::deriv_zeta(FnKind::FirstSheet, p, kLor, z);
    CHECK(std::abs(jd - analytic) / std::abs(jd) < 1e-6);
}

TEST_CASE("Schwarz symmetry on the first sheet") {
    const auto p = make_params(0.3, 0.05, 0.1);
    for (const ComplexEnergy z :
         {ComplexEnergy{1.2, 0.4}, ComplexEnergy{-0.7, 0.9},
          ComplexEnergy{0.4, 2.0}}) {
        const auto a = resolvent::eval_f(p, kLor, std::conj(z));
        const auto b = std::conj(resolvent::eval_f(p, kLor, z));
        CHECK(std::abs(a - b) < 1e-12);
    }
}

TEST_CASE("hydrogen resolvent basics") {
    // kappa = 0: F = zeta - 1 exactly
    const ComplexEnergy z{1.4, -0.2};
    CHECK(std::abs(resolvent::eval_F_hydrogen(2, 0.0, 548.0, z) - (z - 1.0)) ==
          0.0);
    // near the standard zero the continued value is tiny
    const double kappa2 = 0.017951, mu2 = 548.144;
    CHECK(std::abs(resolvent::eval_F_hydrogen(2, kappa2, mu2,
                                              {1.0 - 2e-6, -2e-8})) < 1e-5);
    // pole exclusion at -i mu
    CHECK_THROWS_AS(
        resolvent::eval_F_hydrogen(2, kappa2, mu2, {0.0, -mu2}), PoleError);
}

TEST_CASE("unreachable tolerances surface as QuadratureError") {
    const auto p = make_params(0.1, 0.01, 0.25);
    resolvent::EvalOptions eo;
    eo.quad_rel_tol = 1e-30;
    eo.quad_abs_tol = 1e-30;
    CHECK_THROWS_AS(resolvent::eval_f(p, kLor, {1.3, 0.4}, eo),
                    QuadratureError);
}

TEST_CASE("self-energy split matches the assembled function") {
    const auto p = make_params(0.37, 0.05, 0.21);
    for (const ComplexEnergy z :
         {ComplexEnergy{1.2, 0.3}, ComplexEnergy{0.9, -0.2}}) {
        const auto S = resolvent::self_energy_splus(p, kLor, z, {}, 0);
        const auto f = resolvent::eval_f_plus(p, kLor, z);
        const auto assembled = z - (1.0 + p.delta) - p.kappa * p.kappa * S;
        CHECK(std::abs(f - assembled) < 1e-12);
        const auto S1 = resolvent::self_energy_splus(p, kLor, z, {}, 1);
        const auto d = resolvent::deriv_zeta(FnKind::SecondSheet, p, kLor, z);
        CHECK(std::abs(d - (1.0 - p.kappa * p.kappa * S1)) < 1e-10);
    }
}
