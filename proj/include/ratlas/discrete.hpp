// discrete.hpp — zero-width closed forms (dressed states, vacuum Rabi
// splitting) and the 3-mode discretization of the continuum.

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ratlas/types.hpp"

namespace ratlas::discrete {

// Normalized mixing amplitudes in the excitation-n basis
// { atomic |1> (x) |k0>^(n-1), photonic |0> (x) |k0>^n }.
struct DressedVectors {
    double atomic_minus{0.0}, photonic_minus{0.0};
    double atomic_plus{0.0}, photonic_plus{0.0};
};

struct DressedPair {
    int n{1};
    double zeta_minus{0.0}, zeta_plus{0.0};
    DressedVectors mixing{};
};

// zeta_(-/+),n = n + (delta -/+ sqrt(delta^2 + 4 n kappa^2)) / 2, exact.
DressedPair dressed_eigenvalues(int n, double kappa, double delta);

// Normalized eigenvectors of the 2x2 excitation-n block. Throws
// DegenerateError when an eigenvalue vanishes.
DressedVectors dressed_eigenvectors(int n, double kappa, double delta);

using Mat4 = std::array<std::array<double, 4>, 4>;

// The 3-mode discretization Hamiltonian in hbar*c*k0 units,
// basis { |1;0>, |0;k-), |0;k0>, |0;k+) } with k± = k0 (1 ± mu).
Mat4 discretized_matrix(double kappa, double mu, double delta);

// Ascending eigenvalues by cyclic Jacobi rotations.
std::array<double, 4> matrix_eigenvalues(const Mat4& m);

// General small dense symmetric eigensolver (row-major n x n input).
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

// Minimum adjacent-eigenvalue gap of the 3-mode matrix over a delta grid.
double min_gap(double kappa, double mu, std::pair<double, double> delta_range,
               int steps);

// Full eigenvalue curves over the delta grid: rows {delta, e1..e4}.
// Evaluated with the parallel grid kernel (or its serial twin).
std::vector<std::array<double, 5>> eigencurves(double kappa, double mu,
                                               std::pair<double, double> delta_range,
                                               int steps, bool parallel = true);

} // namespace ratlas::discrete
