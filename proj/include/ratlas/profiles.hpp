// profiles.hpp — rational coupling profiles of the form N(y)/(1+y^2)^q with
// exact integer numerator coefficients, and their weighted norms
// ||f|| = (2 int_0^inf f(y)^2 dy/y)^(1/2).

#pragma once

#include <complex>
#include <vector>

#include "ratlas/errors.hpp"

namespace ratlas::hydrogen {

// Profile value = numerator(y) / (1+y^2)^denom_power. The numerator always
// vanishes at y = 0 (numerator[0] == 0), so the weighted norm is finite.
struct RationalProfile {
    std::vector<double> numerator;   // ascending powers of y
    int denom_power{1};
    double norm{1.0};                // weighted norm of the profile as stored
    double log_norm{0.0};            // ln(norm), valid even when norm overflows

    double eval(double y) const;
    std::complex<double> eval(std::complex<double> y) const;
    std::complex<double> eval_deriv(std::complex<double> y) const;
    bool coefficients_finite() const;
};

// A_p(y) = (-1)^(p+1) y Q_(p-2)(y) / (1+y^2)^p built by the exact recursion
// behind repeated differentiation of x*arctan(1/x). Requires p >= 2.
RationalProfile ap_profile(int p);

// phi_n(y) = y [alpha_n Q_(2n-4)(y) + beta_n (1+y^2) Q_(2n-5)(y)] / (1+y^2)^(2n-2)
// for the circular transition |n,n-1,0> -> |n-1,n-2,0>. Requires n >= 2.
RationalProfile circular_profile(int n);

// Normalized 2p->1s profile, -sqrt(3) y / (1+y^2)^2.
double g2_profile(double y);

} // namespace ratlas::hydrogen
