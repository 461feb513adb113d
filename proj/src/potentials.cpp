#include "sso/potentials.hpp"
#include "sso/errors.hpp"

#include <cmath>
#include <limits>

namespace sso {

namespace {

const double INV_E = std::exp(-1.0);              // 1/e
const double EXP_M_INV_E = std::exp(-INV_E);      // e^(-1/e), shift constant
const double LOG_DBL_MAX = std::log(std::numeric_limits<double>::max());

// alpha * e^t with saturation at cap; t is the log of the dimensionless value.
double capped_exp(double alpha, double t, double cap)
{
    if (t >= LOG_DBL_MAX || alpha * std::exp(std::min(t, LOG_DBL_MAX)) > cap)
        return cap;
    return alpha * std::exp(t);
}

} // namespace

double xlogx(double x)
{
    return x == 0.0 ? 0.0 : x * std::log(std::fabs(x));
}

Family family_from_string(const std::string& name)
{
    if (name == "sep_raw")      return Family::sep_raw;
    if (name == "sep_shifted")  return Family::sep_shifted;
    if (name == "sep_modified") return Family::sep_modified;
    if (name == "skewed")       return Family::skewed;
    if (name == "power_law")    return Family::power_law;
    throw ConfigError("unknown potential family '" + name + "'");
}

std::string family_to_string(Family f)
{
    switch (f) {
        case Family::sep_raw:      return "sep_raw";
        case Family::sep_shifted:  return "sep_shifted";
        case Family::sep_modified: return "sep_modified";
        case Family::skewed:       return "skewed";
        case Family::power_law:    return "power_law";
    }
    return "?";
}

void validate(const PotentialSpec& spec)
{
    if (!(spec.alpha > 0.0))
        throw ConfigError("potential.alpha must be positive");
    if (spec.family == Family::skewed && !(spec.delta > 0.0))
        throw ConfigError("potential.delta must be positive for the skewed family");
    if (spec.family == Family::power_law && !(spec.beta > 0.0))
        throw ConfigError("potential.beta must be positive for the power_law family");
    if (!(spec.energy_cap > 0.0))
        throw ConfigError("potential.energy_cap must be positive");
}

double evaluate(const PotentialSpec& spec, double q)
{
    switch (spec.family) {
        case Family::sep_raw:
            return capped_exp(spec.alpha, xlogx(q), spec.energy_cap);

        case Family::skewed:
            return capped_exp(spec.alpha, spec.delta * xlogx(q), spec.energy_cap);

        case Family::sep_shifted: {
            double t = xlogx(q + INV_E);
            if (t >= LOG_DBL_MAX)
                return spec.energy_cap;
            double v = spec.alpha * (std::exp(t) - EXP_M_INV_E);
            return v > spec.energy_cap ? spec.energy_cap : v;
        }

        case Family::sep_modified: {
            if (q < -2.0 * INV_E) {
                // plateau at the barrier-top energy: keeps the left side flat
                double vmax = spec.alpha * std::exp(INV_E) * (1.0 - std::exp(-2.0 * INV_E));
                return vmax > spec.energy_cap ? spec.energy_cap : vmax;
            }
            PotentialSpec shifted = spec;
            shifted.family = Family::sep_shifted;
            return evaluate(shifted, q);
        }

        case Family::power_law: {
            double v = 0.5 * spec.alpha * std::pow(std::fabs(q), spec.beta);
            if (!std::isfinite(v) || v > spec.energy_cap)
                return spec.energy_cap;
            return v;
        }
    }
    throw ConfigError("unhandled potential family");
}

Landmarks landmarks(const PotentialSpec& spec)
{
    if (spec.family != Family::sep_shifted && spec.family != Family::sep_modified)
        throw ConfigError("landmarks are only defined for sep_shifted/sep_modified, got " +
                          family_to_string(spec.family));
    Landmarks lm;
    lm.q_min = 0.0;
    lm.q_max = -2.0 * INV_E;
    lm.q_v = -INV_E;
    lm.v_max = spec.alpha * std::exp(INV_E) * (1.0 - std::exp(-2.0 * INV_E));
    lm.v_v = spec.alpha * (1.0 - std::exp(-INV_E));
    return lm;
}

} // namespace sso
