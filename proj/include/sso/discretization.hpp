#pragma once

#include "sso/potentials.hpp"

#include <array>
#include <vector>

namespace sso {

/// Uniform grid of interior points on (q_lo, q_hi) with hard-wall closure:
/// the wavefunction is implicitly zero at and beyond both endpoints.
/// Interior nodes are q_i = q_lo + (i+1) h, i = 0 .. n_points-1, with
/// h = (q_hi - q_lo) / (n_points + 1).
struct Grid {
    Grid(double q_lo, double q_hi, int n_points);

    double q_lo;
    double q_hi;
    int n_points;
    double h;

    double q(int i) const { return q_lo + (i + 1) * h; }

    /// Smallest interior count whose spacing does not exceed h_max.
    static int points_for_spacing(double q_lo, double q_hi, double h_max);
};

/// 9-point central second-derivative weights of eighth order, to be divided
/// by h^2 on use.  Only accuracy_order == 8 is supported.
std::array<double, 9> stencil_coefficients(int accuracy_order);

/// Symmetric banded matrix in LAPACK lower-band storage:
/// ab[j*(kd+1) + k] = A(j+k, j) for k = 0..kd (column-major, leading
/// dimension kd+1).  Only one triangle is stored, so the matrix is
/// Hermitian by construction.
struct BandedHamiltonian {
    int n = 0;            ///< dimension
    int kd = 4;           ///< half bandwidth
    double hbar = 1.0;
    double mass = 1.0;
    std::vector<double> ab;

    double& at(int i, int j);          ///< lower-triangle accessor, i >= j
    double entry(int i, int j) const;  ///< symmetric read, zero outside band

    /// Gershgorin-style norm bound: max column sum of absolute values.
    double norm_bound() const;

    /// y = A x using the symmetric band.
    void apply(const std::vector<double>& x, std::vector<double>& y) const;
};

/// Discretize  -(hbar^2 / 2m) d^2/dq^2 + V(q)  on the grid with the
/// eighth-order stencil.  Diagonal entry i is (hbar^2/2m)(205/72)/h^2 + V(q_i);
/// band k = 1..4 holds the constant -(hbar^2/2m) c_k / h^2 with
/// c_1 = 8/5, c_2 = -1/5, c_3 = 8/315, c_4 = -1/560.
BandedHamiltonian assemble_hamiltonian(const Grid& grid, const PotentialSpec& spec,
                                       double hbar, double mass);

struct DomainSuggestion {
    double q_lo;
    double q_hi;
    int n_points;
};

/// Heuristic solve domain for states up to energy e_cap (pass e_cap <= 0 to
/// default to the well depth for SEP families).  The superexponential wall
/// is pushed to V >= 10 e_cap and the plateau side gets a tunneling margin
/// of 8 decay lengths; power-law domains extend past the classical turning
/// point until the WKB suppression integral reaches 18 hbar.  The spacing
/// resolves the shortest local de Broglie wavelength with at least 10
/// points.  A convergence loop that refines h is still the authoritative
/// accuracy check.
DomainSuggestion suggest_domain(const PotentialSpec& spec, double e_cap,
                                double hbar, double mass);

} // namespace sso
