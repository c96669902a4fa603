// quadrature.hpp — adaptive Gauss-Kronrod (G7,K15) integration for
// complex-valued integrands of a real variable, plus straight-segment
// integrals in the complex plane.

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace ratlas::quad {

using Complex = std::complex<double>;

struct Options {
    double rel_tol{1e-10};
    double abs_tol{1e-13};
    int max_intervals{8000};
};

struct Result {
    Complex value{};
    double error{0.0};
    int evaluations{0};
    bool converged{false};
};

using Integrand = std::function<Complex(double)>;

// Adaptive integration over [a, b]. `knots` are interior abscissas where the
// integrand has known features; they seed the initial subdivision.
Result integrate(const Integrand& f, double a, double b, const Options& opts,
                 std::span<const double> knots = {});

// Semi-infinite integral over [a, inf), mapped by y = a + s*t/(1-t) with
// scale s > 0 chosen near the integrand's feature scale.
Result integrate_half_line(const Integrand& f, double a, double scale,
                           const Options& opts,
                           std::span<const double> knots = {});

// Straight segment from za to zb in the complex plane.
Result integrate_segment(const std::function<Complex(Complex)>& f, Complex za,
                         Complex zb, const Options& opts,
                         std::span<const double> knots = {});

} // namespace ratlas::quad
