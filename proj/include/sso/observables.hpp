#pragma once

#include "sso/discretization.hpp"
#include "sso/potentials.hpp"

#include <vector>

namespace sso {

/// Position statistics of a single normalized state: the mean mu = <q> and
/// the central moments m_n = <(q - mu)^n> for n = 0 .. order.
struct MomentReport {
    double mu = 0.0;
    std::vector<double> central_moments;  ///< index n holds m_n
};

/// Level-spacing bookkeeping for an ascending energy list.
///
/// spacings[i]      = E_{i+1} - E_i               (size N-1)
/// scaled_spacings[i] = spacings[i+1]/spacings[i] (size N-2)
/// bound_count      = #levels strictly below v_max
/// branch_index     = smallest n with E_n > v_v, or -1 if none
struct SpectrumReport {
    std::vector<double> energies;
    std::vector<double> spacings;
    std::vector<double> scaled_spacings;
    int bound_count = 0;
    int branch_index = -1;
};

/// h-weighted mean position; psi must be grid-normalized (deviation of
/// h sum psi^2 from 1 above 1e-6 is a precondition violation).
double mean_position(const std::vector<double>& psi, const Grid& grid);

/// h-weighted n-th central moment about mean_position, 0 <= n <= 20.
double central_moment(const std::vector<double>& psi, const Grid& grid, int n);

/// Convenience: mu plus m_0..m_order in one pass.
MomentReport moment_report(const std::vector<double>& psi, const Grid& grid, int order = 9);

/// Spacings, scaled spacings and the two well landmarks folded into counts.
SpectrumReport spacing_analysis(const std::vector<double>& energies, const Landmarks& lm);

/// Number of energies strictly below v_max.
int count_bound(const std::vector<double>& energies, double v_max);

/// Sign changes between consecutive samples that both clear the noise floor
/// of 1e-3 max|psi|; equals the state index by Sturm oscillation.
int node_count(const std::vector<double>& psi);

} // namespace sso
