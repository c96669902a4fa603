// errors.hpp — error taxonomy shared by all resonance-atlas modules

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ratlas {

// Base class; everything thrown by the library derives from it.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid parameter or argument outside a function's domain.
struct DomainError : Error {
    using Error::Error;
};

// Evaluation requested on (or too close to) the spectral cut R+.
struct CutError : Error {
    using Error::Error;
};

// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureError : Error {
    using Error::Error;
};

// Point inside the exclusion disk of a pole of the continued weight.
struct PoleError : Error {
    using Error::Error;
};

// Deformed-contour continuation requested outside its validity strip.
struct StripError : Error {
    using Error::Error;
};

// Iterative solver exhausted its iteration budget.
struct NoConvergence : Error {
    using Error::Error;
};

// Root iteration wandered into a pole exclusion disk.
struct PoleCapture : Error {
    using Error::Error;
};

// Combinatorial constants exceeded the representable range.
struct OverflowError : Error {
    using Error::Error;
};

// Parameter continuation broke down; carries the parameter value at which
// the step size underflowed (branch point / pole collision indicator).
struct TrackingLost : Error {
    double param_value;
    explicit TrackingLost(double value, const std::string& what)
        : Error(what), param_value(value) {}
};

// Two tracked zeros merged mid-sweep (parameters at a degenerate point).
struct DegenerateRegime : Error {
    using Error::Error;
};

// Dressed-state eigenvector requested at a vanishing eigenvalue.
struct DegenerateError : Error {
    using Error::Error;
};

} // namespace ratlas
