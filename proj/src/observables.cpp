#include "sso/observables.hpp"
#include "sso/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sso {

namespace {

void require_normalized(const std::vector<double>& psi, const Grid& grid)
{
    if (static_cast<int>(psi.size()) != grid.n_points)
        throw std::invalid_argument("state length does not match the grid");
    double s = 0.0;
    for (double v : psi) s += v * v;
    if (std::fabs(grid.h * s - 1.0) > 1e-6)
        throw std::invalid_argument("state is not grid-normalized");
}

} // namespace

double mean_position(const std::vector<double>& psi, const Grid& grid)
{
    require_normalized(psi, grid);
    double s = 0.0;
    for (int i = 0; i < grid.n_points; ++i)
        s += grid.q(i) * psi[i] * psi[i];
    return grid.h * s;
}

double central_moment(const std::vector<double>& psi, const Grid& grid, int n)
{
    if (n < 0 || n > 20)
        throw ConfigError("central moment order must lie in [0, 20]");
    require_normalized(psi, grid);
    const double mu = mean_position(psi, grid);
    double s = 0.0;
    for (int i = 0; i < grid.n_points; ++i)
        s += std::pow(grid.q(i) - mu, n) * psi[i] * psi[i];
    return grid.h * s;
}

MomentReport moment_report(const std::vector<double>& psi, const Grid& grid, int order)
{
    if (order < 0 || order > 20)
        throw ConfigError("central moment order must lie in [0, 20]");
    require_normalized(psi, grid);

    MomentReport rep;
    rep.mu = mean_position(psi, grid);
    rep.central_moments.assign(order + 1, 0.0);
    for (int i = 0; i < grid.n_points; ++i) {
        const double w = grid.h * psi[i] * psi[i];
        const double d = grid.q(i) - rep.mu;
        double p = 1.0;
        for (int n = 0; n <= order; ++n) {
            rep.central_moments[n] += w * p;
            p *= d;
        }
    }
    return rep;
}

SpectrumReport spacing_analysis(const std::vector<double>& energies, const Landmarks& lm)
{
    if (energies.size() < 3)
        throw std::invalid_argument("spacing analysis needs at least 3 energies");
    for (size_t i = 1; i < energies.size(); ++i)
        if (!(energies[i] > energies[i - 1]))
            throw std::invalid_argument("energies must be strictly ascending");

    SpectrumReport rep;
    rep.energies = energies;
    rep.spacings.reserve(energies.size() - 1);
    for (size_t i = 1; i < energies.size(); ++i)
        rep.spacings.push_back(energies[i] - energies[i - 1]);
    rep.scaled_spacings.reserve(energies.size() - 2);
    for (size_t i = 1; i < rep.spacings.size(); ++i)
        rep.scaled_spacings.push_back(rep.spacings[i] / rep.spacings[i - 1]);

    rep.bound_count = count_bound(energies, lm.v_max);
    rep.branch_index = -1;
    for (size_t i = 0; i < energies.size(); ++i)
        if (energies[i] > lm.v_v) {
            rep.branch_index = static_cast<int>(i);
            break;
        }
    return rep;
}

int count_bound(const std::vector<double>& energies, double v_max)
{
    int c = 0;
    for (double e : energies)
        if (e < v_max) ++c;
    return c;
}

int node_count(const std::vector<double>& psi)
{
    double amax = 0.0;
    for (double v : psi) amax = std::max(amax, std::fabs(v));
    const double floor = 1e-3 * amax;

    int changes = 0;
    int last_sign = 0;
    for (double v : psi) {
        if (std::fabs(v) <= floor)
            continue;
        int sign = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign)
            ++changes;
        last_sign = sign;
    }
    return changes;
}

} // namespace sso
