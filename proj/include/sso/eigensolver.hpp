#pragma once

#include "sso/discretization.hpp"

#include <vector>

namespace sso {

/// Lowest part of a banded symmetric spectrum.
///
/// Energies come back ascending.  Each state is sampled on the grid and
/// normalized under grid quadrature, h * sum psi_i^2 = 1, with the sign fixed
/// so that the first component above the noise floor (1e-3 of the max
/// amplitude) is positive.  residuals[i] = ||H psi - E psi|| / ||psi||.
struct EigenSolution {
    std::vector<double> energies;
    std::vector<std::vector<double>> states;
    std::vector<double> residuals;
    Grid grid;
};

/// Raw band solve: eigenvectors have unit Euclidean norm, no grid attached.
struct BandEigenResult {
    std::vector<double> energies;
    std::vector<std::vector<double>> vectors;
    std::vector<double> residuals;
};

/// Compute the k algebraically smallest eigenpairs of the symmetric band
/// matrix.  Eigenvalues via bisection on the tridiagonal reduction,
/// eigenvectors via banded inverse iteration with a deterministic seed, so
/// repeated runs on the same matrix are bitwise identical.  Near-degenerate
/// clusters (gap < 1e-12 ||H||) are orthogonalized internally.  Throws
/// SolverError (with the failing index) if a residual cannot be pushed below
/// tol * ||H|| within the iteration budget, ConfigError for bad k/tol.
BandEigenResult solve_band_lowest(const BandedHamiltonian& H, int k, double tol = 1e-10);

/// Grid-normalized wrapper around solve_band_lowest; psi = v / sqrt(h).
EigenSolution solve_lowest(const BandedHamiltonian& H, const Grid& grid, int k,
                           double tol = 1e-10);

/// ||H psi - E psi||_2 / ||psi||_2.
double residual_norm(const BandedHamiltonian& H, double E, const std::vector<double>& psi);

} // namespace sso
