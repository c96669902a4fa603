#include <doctest.h>

#include <cmath>

#include "ratlas/quadrature.hpp"

using ratlas::quad::Complex;
using ratlas::quad::Options;

TEST_CASE("polynomial and exponential basics") {
    Options qo;
    auto r = ratlas::quad::integrate(
        [](double x) { return Complex{x * x, 0.0}; }, 0.0, 1.0, qo);
    CHECK(r.converged);
    CHECK(r.value.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    auto e = ratlas::quad::integrate_half_line(
        [](double x) { return Complex{std::exp(-x), 0.0}; }, 0.0, 1.0, qo);
    CHECK(e.converged);
    CHECK(e.value.real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oscillatory integrand") {
    Options qo;
    auto r = ratlas::quad::integrate(
        [](double x) { return Complex{std::sin(x), 0.0}; }, 0.0, 20.0, qo);
    CHECK(r.converged);
    CHECK(r.value.real() ==
          doctest::Approx(1.0 - std::cos(20.0)).epsilon(1e-12));
}

TEST_CASE("narrow lorentzian spike against the arctan closed form") {
    Options qo;
    const double eps = 1e-5, x0 = 0.37;
    auto f = [&](double x) {
        return Complex{eps / ((x - x0) * (x - x0) + eps * eps), 0.0};
    };
    const double knots[] = {x0 - eps, x0, x0 + eps};
    auto r = ratlas::quad::integrate(f, 0.0, 1.0, qo, knots);
    CHECK(r.converged);
    const double exact = std::atan((1.0 - x0) / eps) + std::atan(x0 / eps);
    CHECK(r.value.real() == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("complex segment: integral of 1/z") {
    Options qo;
    const Complex a{1.0, -1.0}, b{2.0, 1.0};
    auto r = ratlas::quad::integrate_segment(
        [](Complex z) { return 1.0 / z; }, a, b, qo);
    CHECK(r.converged);
    const Complex exact = std::log(b) - std::log(a); // path stays right of 0
    CHECK(std::abs(r.value - exact) < 1e-12);
}

TEST_CASE("half-line map handles slow power decay") {
    Options qo;
    auto r = ratlas::quad::integrate_half_line(
        [](double x) { return Complex{1.0 / std::pow(1.0 + x, 3), 0.0}; }, 0.0,
        1.0, qo);
    CHECK(r.converged);
    CHECK(r.value.real() == doctest::Approx(0.5).epsilon(1e-12));
}
