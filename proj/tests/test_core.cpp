#include <doctest.h>

#include <cmath>

#include "ratlas/family.hpp"
#include "ratlas/quadrature.hpp"

using namespace ratlas;

namespace {
// tiny deterministic generator for property-style checks
struct Rng {
    std::uint64_t s{0x9e3779b97f4a7c15ull};
    double next(double lo, double hi) {
        s ^= s << 13; s ^= s >> 7; s ^= s << 17;
        return lo + (hi - lo) * (double)(s >> 11) / 9007199254740992.0;
    }
};
} // namespace

TEST_CASE("make_params validates the parameter domain") {
    CHECK_NOTHROW(make_params(0.1, 0.01, 0.25));
    CHECK_THROWS_AS(make_params(0.1, 0.0, 0.25), DomainError);
    CHECK_NOTHROW(make_params(0.0, 0.01, 0.0));
    CHECK_THROWS_AS(make_params(-0.1, 0.01, 0.0), DomainError);
    CHECK_THROWS_AS(make_params(0.1, 0.01, -1.0), DomainError);
    CHECK_THROWS_AS(make_params(0.1, -2.0, 0.0), DomainError);
}

TEST_CASE("lorentzian weight values and coupling amplitude") {
    const auto fam = CouplingFamily::lorentzian_squared();
    const auto p = make_params(0.1, 0.01, 0.25);
    CHECK(fam.weight(p, 1.0) == doctest::Approx(1.0));
    CHECK(fam.weight(p, 1.01) == doctest::Approx(0.25));
    // g(k0) = sqrt(2/pi) / sqrt(mu) at k = k0 = 1
    CHECK(fam.coupling_amplitude(p, 1.0) ==
          doctest::Approx(7.9788456).epsilon(1e-6));

    Rng rng;
    for (int i = 0; i < 200; ++i) {
        const double y = rng.next(-4.0, 4.0);
        CHECK(fam.weight(p, y) >= 0.0);
    }
}

TEST_CASE("weight continuation restricts to the real axis") {
    Rng rng;
    const auto p = make_params(0.1, 0.05, 0.25);
    for (const auto& fam :
         {CouplingFamily::lorentzian_squared(), CouplingFamily::simple_pole(),
          CouplingFamily::hydrogen_circular(2),
          CouplingFamily::user_rational({0.0, 1.0}, {1.25, -2.0, 1.0})}) {
        for (int i = 0; i < 50; ++i) {
            const double y = rng.next(-3.0, 3.0);
            const auto w = fam.weight_continuation(p, {y, 0.0});
            CHECK(std::abs(w - fam.weight(p, y)) < 1e-14);
        }
    }
}

TEST_CASE("weight continuation refuses pole exclusion disks") {
    const auto fam = CouplingFamily::lorentzian_squared();
    const auto p = make_params(0.1, 0.01, 0.25);
    CHECK_THROWS_AS(fam.weight_continuation(p, {1.0, -0.01}), PoleError);
    CHECK_THROWS_AS(fam.weight_continuation(p, {-1.0, -0.01}), PoleError);
    CHECK_NOTHROW(fam.weight_continuation(p, {1.0, -0.02}));
}

TEST_CASE("hydrogen(2) continuation at i/2 is -64/27") {
    const auto fam = CouplingFamily::hydrogen_circular(2);
    const auto p = make_params(0.018, 548.0, 0.0);
    const auto v = fam.weight_continuation(p, {0.0, 0.5});
    CHECK(v.real() == doctest::Approx(-64.0 / 27.0).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-14);
}

TEST_CASE("L2 normalization of the two-level families") {
    // (2/pi)(1/mu) int w dy = 1 encodes ||g||_2 = 1
    quad::Options qo;
    for (double mu : {0.013, 0.2, 1.7}) {
        const auto fam = CouplingFamily::lorentzian_squared();
        const auto p = make_params(0.1, mu, 0.0);
        auto r = quad::integrate_half_line(
            [&](double y) {
                return quad::Complex{fam.weight(p, y) + fam.weight(p, -y), 0.0};
            },
            0.0, 1.0 + 4.0 * mu, qo, fam.feature_knots(p));
        REQUIRE(r.converged);
        CHECK((2.0 / (M_PI * mu)) * r.value.real() ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    // simple-pole family under the same convention
    {
        const auto fam = CouplingFamily::simple_pole();
        const auto p = make_params(0.1, 1.0, 0.0);
        auto r = quad::integrate_half_line(
            [&](double y) {
                return quad::Complex{fam.weight(p, y) + fam.weight(p, -y), 0.0};
            },
            0.0, 2.0, qo);
        REQUIRE(r.converged);
        CHECK(fam.density_prefactor(p) * r.value.real() ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("hydrogen weighted norm: 2 int G2^2 dy/y = 1") {
    const auto fam = CouplingFamily::hydrogen_circular(2);
    const auto p = make_params(0.018, 548.0, 0.0);
    quad::Options qo;
    auto r = quad::integrate_half_line(
        [&](double y) { return quad::Complex{fam.weight(p, y) / y, 0.0}; },
        1e-12, 2.0, qo);
    REQUIRE(r.converged);
    CHECK(2.0 * r.value.real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pole inventories") {
    const auto p = make_params(0.1, 0.03, 0.0);
    {
        const auto poles =
            CouplingFamily::lorentzian_squared().lower_poles(p);
        REQUIRE(poles.size() == 2);
        CHECK(poles[0].location == ComplexEnergy{-1.0, -0.03});
        CHECK(poles[1].location == ComplexEnergy{1.0, -0.03});
        CHECK(poles[0].order == 2);
        CHECK(poles[1].order == 2);
    }
    for (int n : {2, 5}) {
        const auto poles = CouplingFamily::hydrogen_circular(n).lower_poles(p);
        REQUIRE(poles.size() == 1);
        CHECK(std::abs(poles[0].location - ComplexEnergy{0.0, -1.0}) < 1e-15);
        CHECK(poles[0].order == 2 * n - 2);
    }
}

TEST_CASE("user rational family validation and normalization") {
    // profile y / ((y-1)^2 + mu^2), the "multiply by p" probe at mu = 0.5
    const double mu = 0.5;
    const std::vector<double> num{0.0, 1.0};
    const std::vector<double> den{1.0 + mu * mu, -2.0, 1.0};
    const auto fam = CouplingFamily::user_rational(num, den);
    const auto p = make_params(0.1, mu, 0.0);

    // normalized: prefactor * (w(y)+w(-y)) integrates to 1 on the half line
    quad::Options qo;
    auto r = quad::integrate_half_line(
        [&](double y) {
            return quad::Complex{fam.weight(p, y) + fam.weight(p, -y), 0.0};
        },
        0.0, fam.tail_scale(p), qo, fam.feature_knots(p));
    REQUIRE(r.converged);
    CHECK(fam.density_prefactor(p) * r.value.real() ==
          doctest::Approx(1.0).epsilon(1e-9));

    const auto poles = fam.lower_poles(p);
    REQUIRE(poles.size() == 1);
    CHECK(std::abs(poles[0].location - ComplexEnergy{1.0, -mu}) < 1e-10);
    CHECK(poles[0].order == 2);

    CHECK_THROWS_AS(CouplingFamily::user_rational({1.0}, {0.0, 1.0}),
                    DomainError);  // real zero in the denominator
    CHECK_THROWS_AS(CouplingFamily::user_rational({0.0, 0.0, 1.0},
                                                  {1.0, 0.0, 1.0}),
                    DomainError);  // not square integrable
}
