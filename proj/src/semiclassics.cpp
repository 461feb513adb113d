#include "sso/semiclassics.hpp"
#include "sso/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace sso {

namespace {

constexpr double PI = 3.14159265358979323846;

// ---------------------------------------------------------------- root solve

// Brent's method on a bracketing interval [a, b] with f(a) f(b) <= 0.
double brent(const std::function<double(double)>& f, double a, double b,
             double rtol, double atol = 1e-15, int max_iter = 200)
{
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw SolverError("root bracket does not straddle a sign change");

    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * rtol * std::fabs(b) + 0.5 * atol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0)
            return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            // inverse quadratic / secant step
            double p, q2, r, s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q2 = 1.0 - s;
            } else {
                double q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q2 = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q2 = -q2;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q2 - std::fabs(tol1 * q2), std::fabs(e * q2))) {
                e = d;
                d = p / q2;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw SolverError("Brent iteration did not converge");
}

// ---------------------------------------------------------------- quadrature

// Fixed-grid tanh-sinh rule on (a, b).  The double-exponential substitution
// x = c + s tanh(pi/2 sinh t) pushes abscissae toward the endpoints fast
// enough that integrable endpoint singularities (inverse square roots, logs)
// converge at spectral rate without handling them explicitly.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 int points)
{
    const double c = 0.5 * (a + b), s = 0.5 * (b - a);
    const double t_max = 3.0;
    const int half = std::max(16, points / 2);
    const double dt = t_max / half;

    double sum = 0.0;
    for (int j = -half; j <= half; ++j) {
        const double t = j * dt;
        const double u = 0.5 * PI * std::sinh(t);
        const double x = c + s * std::tanh(u);
        if (x <= a || x >= b)
            continue;  // underflowed into an endpoint
        const double ch = std::cosh(u);
        const double w = s * (0.5 * PI * std::cosh(t)) / (ch * ch);
        const double v = f(x);
        if (std::isfinite(v))
            sum += w * v;
    }
    return sum * dt;
}

// ------------------------------------------------------------------- helpers

// Interior points where V is not smooth (the SEP transition point, the
// power-law origin), used to split the quadrature into smooth panels.
std::vector<double> interior_kinks(const PotentialSpec& spec, double q1, double q2)
{
    std::vector<double> kinks;
    if (spec.family == Family::sep_shifted || spec.family == Family::sep_modified) {
        const double q_v = -std::exp(-1.0);
        if (q1 < q_v && q_v < q2)
            kinks.push_back(q_v);
    } else if (spec.family == Family::power_law) {
        if (q1 < 0.0 && 0.0 < q2)
            kinks.push_back(0.0);
    }
    return kinks;
}

// Integrals of (E - V)^p between simple turning points, p = +1/2 (action)
// or -1/2 (period).  Writing E - V(q) = R(q) (q - q1)(q2 - q) and
// substituting q = c + s sin(theta) absorbs both endpoint square roots into
// the measure: the theta-integrand is R^p times a power of cos(theta),
// smooth up to interior kinks of V, so the fixed tanh-sinh rule converges at
// spectral rate per panel.  Evaluating R instead of E - V also sidesteps the
// catastrophic cancellation that direct sampling suffers next to the
// (root-solved, hence inexact) turning points.
double well_integral(const PotentialSpec& spec, double E, double power,
                     double q1, double q2, int quad_points)
{
    const double c = 0.5 * (q1 + q2), s = 0.5 * (q2 - q1);
    auto reduced = [&](double theta) {
        const double q = c + s * std::sin(theta);
        const double denom = (q - q1) * (q2 - q);
        const double g = E - evaluate(spec, q);
        return g > 0.0 && denom > 0.0 ? g / denom : 0.0;
    };
    auto integrand = [&](double theta) {
        const double r = reduced(theta);
        if (r <= 0.0)
            return 0.0;
        const double cth = std::cos(theta);
        // dq = s cos dtheta and (q-q1)(q2-q) = s^2 cos^2; for p = +-1/2 the
        // cos factors combine to s^(1+2p) cos^(1+2p).
        return std::pow(s * s * cth * cth, power) * s * cth * std::pow(r, power);
    };

    std::vector<double> edges{-0.5 * PI, 0.5 * PI};
    for (double k : interior_kinks(spec, q1, q2))
        edges.push_back(std::asin(std::clamp((k - c) / s, -1.0, 1.0)));
    std::sort(edges.begin(), edges.end());

    double total = 0.0;
    for (size_t p = 0; p + 1 < edges.size(); ++p)
        total += tanh_sinh(integrand, edges[p], edges[p + 1], quad_points);
    return total;
}

} // namespace

void validate(const WkbConfig& cfg)
{
    if (cfg.quad_points < 32)
        throw ConfigError("wkb quad_points must be at least 32");
    if (!(cfg.root_tol > 0.0))
        throw ConfigError("wkb root_tol must be positive");
    if (!(cfg.maslov_offset > 0.0))
        throw ConfigError("wkb maslov_offset must be positive");
}

std::pair<double, double> turning_points(const PotentialSpec& spec, double E)
{
    validate(spec);
    // near machine precision: any residual V(q1) - E leaks into the reduced
    // well integrand as O(1) relative noise on the nodes closest to the
    // turning point, so the contract's 1e-12 is tightened to the floor
    const double rtol = 4.0 * 2.220446049250313e-16;

    switch (spec.family) {
        case Family::sep_shifted:
        case Family::sep_modified: {
            const Landmarks lm = landmarks(spec);
            if (!(E > 0.0) || !(E < lm.v_max))
                throw std::domain_error("energy must lie inside the well, 0 < E < v_max");
            auto fr = [&](double q) { return evaluate(spec, q) - E; };
            double q1 = brent(fr, lm.q_max, 0.0, rtol);
            double hi = 0.5;
            while (evaluate(spec, hi) < E)
                hi *= 1.5;
            double q2 = brent(fr, 0.0, hi, rtol);
            return {q1, q2};
        }
        case Family::power_law: {
            if (!(E > 0.0))
                throw std::domain_error("power-law turning points need E > 0");
            auto fr = [&](double q) { return evaluate(spec, q) - E; };
            double hi = std::pow(2.0 * E / spec.alpha, 1.0 / spec.beta);
            while (evaluate(spec, hi) < E)
                hi *= 1.5;
            double q2 = brent(fr, 0.0, hi, rtol);
            return {-q2, q2};  // even potential
        }
        default:
            throw ConfigError("turning points are not defined for family " +
                              family_to_string(spec.family));
    }
}

double action_integral(const PotentialSpec& spec, double E, double mass, int quad_points)
{
    if (quad_points < 32)
        throw ConfigError("action quadrature needs at least 32 points");
    auto [q1, q2] = turning_points(spec, E);
    return std::sqrt(2.0 * mass) * well_integral(spec, E, 0.5, q1, q2, quad_points);
}

std::vector<double> wkb_levels(const PotentialSpec& spec, int n_max,
                               const WkbConfig& cfg, double mass)
{
    validate(spec);
    validate(cfg);
    if (n_max < 1)
        throw ConfigError("wkb level count must be at least 1");

    const bool sep = spec.family == Family::sep_shifted || spec.family == Family::sep_modified;
    double e_top = 0.0, s_top = 0.0;
    if (sep) {
        e_top = landmarks(spec).v_max * (1.0 - 1e-12);
        s_top = action_integral(spec, e_top, mass, cfg.quad_points);
    }

    std::vector<double> levels;
    double e_prev = 0.0;
    for (int n = 0; n < n_max; ++n) {
        const double target = (n + cfg.maslov_offset) * PI;
        auto g = [&](double E) { return action_integral(spec, E, mass, cfg.quad_points) - target; };

        double hi;
        if (sep) {
            if (target > s_top)
                break;  // well capacity reached: partial result
            hi = e_top;
        } else {
            hi = std::max(2.0 * e_prev, 1.0);
            while (g(hi) < 0.0)
                hi *= 2.0;
        }
        double lo = e_prev > 0.0 ? e_prev : (sep ? 1e-14 * e_top : 1e-14 * hi);
        levels.push_back(brent(g, lo, hi, cfg.root_tol));
        e_prev = levels.back();
    }
    return levels;
}

double powerlaw_wkb_closed_form(int n, double beta)
{
    if (n < 0)
        throw ConfigError("level index must be non-negative");
    if (!(beta > 0.0))
        throw ConfigError("power-law exponent must be positive");
    const double ratio = std::tgamma(1.5 + 1.0 / beta) / std::tgamma(1.0 + 1.0 / beta);
    const double base = (n + 0.5) * std::sqrt(PI) * ratio;
    return 0.5 * std::pow(base, 2.0 * beta / (2.0 + beta));
}

ClassicalPeriodResult classical_period(const PotentialSpec& spec, double E,
                                       double mass, int quad_points)
{
    if (quad_points < 32)
        throw ConfigError("period quadrature needs at least 32 points");
    auto [q1, q2] = turning_points(spec, E);
    const double T = std::sqrt(2.0 * mass) * well_integral(spec, E, -0.5, q1, q2, quad_points);
    return {E, T, q1, q2};
}

} // namespace sso
