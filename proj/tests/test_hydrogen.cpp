#include <doctest.h>

#include <cmath>

#include "ratlas/hydrogen.hpp"
#include "ratlas/quadrature.hpp"

using namespace ratlas;
using hydrogen::Constants;

namespace {

// spherical Bessel j1, for the profile quadrature oracle
double j1_bessel(double t) {
    if (std::abs(t) < 1e-4) return t / 3.0 - t * t * t / 30.0;
    return std::sin(t) / (t * t) - std::cos(t) / t;
}

double ap_direct(double y, int p) {
    quad::Options qo;
    auto r = quad::integrate(
        [&](double x) {
            return quad::Complex{j1_bessel(y * x) * std::pow(x, p) *
                                     std::exp(-x),
                                 0.0};
        },
        0.0, 60.0 + 10.0 * p, qo);
    REQUIRE(r.converged);
    return r.value.real();
}

} // namespace

TEST_CASE("A_2 is 2y/(1+y^2)^2") {
    const auto a2 = hydrogen::ap_profile(2);
    CHECK(a2.denom_power == 2);
    REQUIRE(a2.numerator.size() == 2);
    CHECK(a2.numerator[0] == 0.0);
    CHECK(a2.numerator[1] == doctest::Approx(2.0));
    CHECK(a2.eval(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(hydrogen::ap_profile(1), DomainError);
}

TEST_CASE("A_p vanishes at the origin and matches direct quadrature") {
    for (int p : {2, 3, 5, 8}) {
        const auto ap = hydrogen::ap_profile(p);
        CHECK(ap.eval(0.0) == 0.0);
    }
    const auto a3 = hydrogen::ap_profile(3);
    for (double y : {0.5, 1.0, 2.0}) {
        const double direct = ap_direct(y, 3);
        CHECK(a3.eval(y) == doctest::Approx(direct).epsilon(1e-10));
    }
    const auto a7 = hydrogen::ap_profile(7);
    CHECK(a7.eval(0.8) == doctest::Approx(ap_direct(0.8, 7)).epsilon(1e-10));
}

TEST_CASE("the n=2 profile is -sqrt(3) y/(1+y^2)^2 after normalization") {
    const auto phi = hydrogen::circular_profile(2);
    REQUIRE(phi.numerator.size() == 2);
    CHECK(phi.numerator[0] == 0.0);
    CHECK(phi.numerator[1] == doctest::Approx(-8.0));
    CHECK(phi.denom_power == 2);
    CHECK(phi.norm * phi.norm == doctest::Approx(64.0 / 3.0).epsilon(1e-13));
    CHECK(phi.numerator[1] / phi.norm ==
          doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("g2 profile values and weighted normalization") {
    CHECK(hydrogen::g2_profile(0.0) == 0.0);
    CHECK(hydrogen::g2_profile(1.0) ==
          doctest::Approx(-std::sqrt(3.0) / 4.0).epsilon(1e-15));
    quad::Options qo;
    auto r = quad::integrate_half_line(
        [](double y) {
            const double g = hydrogen::g2_profile(y);
            return quad::Complex{g * g / y, 0.0};
        },
        1e-12, 2.0, qo);
    REQUIRE(r.converged);
    CHECK(2.0 * r.value.real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("transition constants for n = 2, 10, 50") {
    const auto t2 = hydrogen::transition(2);
    CHECK(t2.alpha_n == 4.0);
    CHECK(t2.beta_n == 0.0);
    CHECK(t2.D_n == doctest::Approx(0.1178511302).epsilon(1e-8));
    CHECK(t2.mu_n == doctest::Approx(548.1440).epsilon(1e-6));
    CHECK(t2.kappa_n == doctest::Approx(0.017951).epsilon(5e-4));
    CHECK(t2.level_spacing_eV == doctest::Approx(10.204275).epsilon(1e-6));

    const auto t10 = hydrogen::transition(10);
    CHECK(t10.alpha_n == 172.0);
    CHECK(t10.beta_n == 2888.0);
    CHECK(t10.kappa_n == doctest::Approx(0.0216570).epsilon(1e-3));

    const auto t50 = hydrogen::transition(50);
    CHECK(t50.kappa_n == doctest::Approx(0.0279717).epsilon(1e-3));

    CHECK_THROWS_AS(hydrogen::transition(1), DomainError);
    // profile coefficients leave double range well before the cap
    CHECK_THROWS_AS(hydrogen::transition(90), OverflowError);
    CHECK_THROWS_AS(hydrogen::transition(301), OverflowError);
}

TEST_CASE("high-n profiles evaluate stably at all scales") {
    // coefficients reach ~1e200 for n = 50; evaluation must stay finite and
    // the quadrature of the normalized profile must recover the exact norm
    quad::Options qo;
    for (int n : {10, 50}) {
        const auto prof = hydrogen::circular_profile(n);
        for (double y : {0.05, 0.7, 1.0, 5.0, 50.0, 1e4}) {
            const double g = prof.eval(y) / prof.norm;
            CHECK(std::isfinite(g));
        }
        auto r = quad::integrate_half_line(
            [&](double y) {
                const double g = prof.eval(y) / prof.norm;
                return quad::Complex{g * g / y, 0.0};
            },
            1e-12, 2.0, qo);
        REQUIRE(r.converged);
        CHECK(2.0 * r.value.real() == doctest::Approx(1.0).epsilon(1e-8));

        // The complex derivative agrees with finite differences in both
        // evaluation regimes. At n = 50 the pointwise evaluation far below
        // the profile peak is cancellation-limited (alternating 1e200-scale
        // coefficients), so the FD comparison is only meaningful at n <= 10.
        if (n <= 10) {
            for (const ComplexEnergy z : {ComplexEnergy{0.8, -0.3},
                                          ComplexEnergy{4.0, -1.5}}) {
                const double h = 1e-7;
                const auto fd =
                    (prof.eval(z + ComplexEnergy{h, 0.0}) -
                     prof.eval(z - ComplexEnergy{h, 0.0})) / (2.0 * h);
                const auto an = prof.eval_deriv(z);
                CHECK(std::abs(an - fd) / std::abs(fd) < 1e-6);
            }
        }
    }
}

TEST_CASE("mu_n sits above the 274 bound, and mu_2 at exactly twice it") {
    const double bound = Constants::hbar_c / Constants::a0 / Constants::E_I;
    CHECK(bound == doctest::Approx(274.072).epsilon(1e-4));
    for (int n : {2, 3, 10, 50}) {
        CHECK(hydrogen::transition(n).mu_n > 274.0);
    }
    CHECK(hydrogen::transition(2).mu_n / bound ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("kappa_n stays of order 0.02 as n grows") {
    for (int n : {2, 10, 50}) {
        const double k = hydrogen::transition(n).kappa_n;
        CHECK(k > 0.01);
        CHECK(k < 0.04);
    }
}

TEST_CASE("the 2p resonances against the frozen positions") {
    const auto [zs, zns] = hydrogen::hydrogen_resonances(2);
    CHECK(zs.zeta.real() == doctest::Approx(0.999998234).epsilon(1e-7));
    CHECK(zs.zeta.imag() == doctest::Approx(-2.0216e-8).epsilon(1e-3));
    CHECK(zs.label == Label::Standard);
    CHECK(zns.zeta.real() == doctest::Approx(1.49544).epsilon(1e-3));
    CHECK(zns.zeta.imag() == doctest::Approx(-544.543).epsilon(1e-3));
    CHECK(zns.label == Label::Nonstandard);
}

TEST_CASE("lifetime conversion") {
    const auto t2 = hydrogen::transition(2);
    const ComplexEnergy z{1.0, -2e-8};
    const double tau2 = hydrogen::lifetime_seconds(z, t2, 2);
    const double tau1 = hydrogen::lifetime_seconds(z, t2, 1);
    CHECK(tau2 == doctest::Approx(Constants::hbar /
                                  (2.0 * 2e-8 * t2.level_spacing_eV)));
    CHECK(tau1 == doctest::Approx(2.0 * tau2));
    CHECK(tau2 == doctest::Approx(1.6e-9).epsilon(0.02));

    // monotone in the width
    const double tau_wide =
        hydrogen::lifetime_seconds({1.0, -1e-6}, t2, 2);
    CHECK(tau_wide < tau2);
    CHECK_THROWS_AS(hydrogen::lifetime_seconds({1.0, 1e-8}, t2, 2),
                    DomainError);
    CHECK_THROWS_AS(hydrogen::lifetime_seconds({1.0, -1e-8}, t2, 0),
                    DomainError);
}
