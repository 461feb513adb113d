#include "sso/discretization.hpp"
#include "sso/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sso {

Grid::Grid(double lo, double hi, int n) : q_lo(lo), q_hi(hi), n_points(n)
{
    if (!(q_lo < q_hi))
        throw ConfigError("grid endpoints must satisfy q_lo < q_hi");
    if (n_points < 9)
        throw ConfigError("grid needs at least 9 interior points for the 9-point stencil");
    h = (q_hi - q_lo) / (n_points + 1);
}

int Grid::points_for_spacing(double q_lo, double q_hi, double h_max)
{
    if (!(h_max > 0.0))
        throw ConfigError("grid spacing bound must be positive");
    int n = static_cast<int>(std::ceil((q_hi - q_lo) / h_max)) - 1;
    return std::max(n, 9);
}

std::array<double, 9> stencil_coefficients(int accuracy_order)
{
    if (accuracy_order != 8)
        throw ConfigError("only the eighth-order stencil is supported");
    return {-1.0 / 560.0, 8.0 / 315.0, -1.0 / 5.0, 8.0 / 5.0, -205.0 / 72.0,
            8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
}

double& BandedHamiltonian::at(int i, int j)
{
    if (j > i || i - j > kd || i >= n)
        throw std::out_of_range("band access outside stored triangle");
    return ab[static_cast<size_t>(j) * (kd + 1) + (i - j)];
}

double BandedHamiltonian::entry(int i, int j) const
{
    if (i < j) std::swap(i, j);
    if (i - j > kd) return 0.0;
    return ab[static_cast<size_t>(j) * (kd + 1) + (i - j)];
}

double BandedHamiltonian::norm_bound() const
{
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = std::max(0, j - kd); i <= std::min(n - 1, j + kd); ++i)
            s += std::fabs(entry(i, j));
        best = std::max(best, s);
    }
    return best;
}

void BandedHamiltonian::apply(const std::vector<double>& x, std::vector<double>& y) const
{
    if (static_cast<int>(x.size()) != n)
        throw ConfigError("vector length does not match matrix dimension");
    y.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = std::max(0, i - kd); j <= std::min(n - 1, i + kd); ++j)
            s += entry(i, j) * x[j];
        y[i] = s;
    }
}

BandedHamiltonian assemble_hamiltonian(const Grid& grid, const PotentialSpec& spec,
                                       double hbar, double mass)
{
    validate(spec);
    if (!(hbar > 0.0) || !(mass > 0.0))
        throw ConfigError("hbar and mass must be positive");

    const auto c = stencil_coefficients(8);
    const double kin = hbar * hbar / (2.0 * mass) / (grid.h * grid.h);

    BandedHamiltonian H;
    H.n = grid.n_points;
    H.kd = 4;
    H.hbar = hbar;
    H.mass = mass;
    H.ab.assign(static_cast<size_t>(H.n) * (H.kd + 1), 0.0);

    // -c[4] = 205/72 is the (positive) diagonal kinetic weight; the bands
    // carry -kin * c_k and are constant across rows.
    for (int j = 0; j < H.n; ++j) {
        H.at(j, j) = kin * (-c[4]) + evaluate(spec, grid.q(j));
        for (int k = 1; k <= 4; ++k)
            if (j + k < H.n)
                H.at(j + k, j) = -kin * c[4 + k];
    }
    return H;
}

DomainSuggestion suggest_domain(const PotentialSpec& spec, double e_cap,
                                double hbar, double mass)
{
    validate(spec);
    const bool sep = spec.family == Family::sep_shifted || spec.family == Family::sep_modified;
    if (!sep && spec.family != Family::power_law)
        throw ConfigError("domain suggestion needs a confining family "
                          "(sep_shifted, sep_modified, or power_law)");

    double vmax = 0.0;
    if (sep) {
        vmax = landmarks(spec).v_max;
        if (e_cap <= 0.0)
            e_cap = vmax;
    } else if (e_cap <= 0.0) {
        throw ConfigError("power_law domain suggestion requires a positive e_cap");
    }

    double q_hi;
    if (sep) {
        // steep side: bisect V(q) = 10 e_cap, keep the outer end of the bracket
        const double target = 10.0 * e_cap;
        double lo = 1e-6, hi = 1.0;
        while (evaluate(spec, hi) < target) {
            hi *= 2.0;
            if (hi > 1e12)
                throw SolverError("could not bracket the confining wall");
        }
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (evaluate(spec, mid) < target ? lo : hi) = mid;
        }
        q_hi = hi;
    } else {
        // Shallow power laws grow so slowly that demanding V = 10 e_cap would
        // push the wall out by orders of magnitude; what actually matters is
        // that the tail at e_cap has died off.  March outward from the
        // classical turning point until the WKB suppression exponent
        // integral of sqrt(2m (V - e_cap)) reaches 18 hbar (~1e-8 amplitude).
        const double q_t = std::pow(2.0 * e_cap / spec.alpha, 1.0 / spec.beta);
        const double dq = std::max(q_t, 1.0) / 256.0;
        double q = q_t, phase = 0.0, kappa_prev = 0.0;
        for (long step = 0; phase < 18.0 * hbar; ++step) {
            if (step > 2000000)
                throw SolverError("tail margin search did not terminate");
            q += dq;
            const double kappa =
                std::sqrt(2.0 * mass * std::max(evaluate(spec, q) - e_cap, 0.0));
            phase += 0.5 * (kappa_prev + kappa) * dq;
            kappa_prev = kappa;
        }
        q_hi = q;
    }

    double q_lo;
    if (sep) {
        // plateau side: 8 decay lengths for the slowest admissible decay rate
        const double de_min = std::max(vmax - e_cap, 1e-3 * vmax);
        const double margin = 8.0 * hbar / std::sqrt(2.0 * mass * de_min);
        q_lo = -2.0 * std::exp(-1.0) - margin;
    } else {
        q_lo = -q_hi;
    }

    // resolution: >= 10 points per shortest de Broglie wavelength at e_cap
    const double lambda = 2.0 * M_PI * hbar / std::sqrt(2.0 * mass * e_cap);
    int n = Grid::points_for_spacing(q_lo, q_hi, lambda / 10.0);
    return {q_lo, q_hi, n};
}

} // namespace sso
