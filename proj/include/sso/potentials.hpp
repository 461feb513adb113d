#pragma once

#include <string>

namespace sso {

/// Potential families supported by the solver.
///
/// The superexponential potential (SEP) is |q|^q = exp(q ln|q|), a
/// self-interacting oscillator whose amplitude and exponent share the same
/// coordinate.  `sep_raw` is that bare form; `sep_shifted` translates it so
/// the minimum sits at the origin with value zero; `sep_modified` replaces
/// the unbounded downhill branch left of the barrier top by a constant
/// plateau so that every state below the barrier is a proper bound state.
/// `skewed` scales the exponent by delta, and `power_law` is the standard
/// (1/2) alpha |q|^beta family used for cross-checks.
enum class Family {
    sep_raw,
    sep_shifted,
    sep_modified,
    skewed,
    power_law,
};

Family family_from_string(const std::string& name);
std::string family_to_string(Family f);

struct PotentialSpec {
    Family family = Family::sep_modified;
    double alpha = 1.0;       ///< amplitude, energy units, > 0
    double delta = 1.0;       ///< exponent scale, `skewed` only, > 0
    double beta = 2.0;        ///< power-law exponent, `power_law` only, > 0
    double energy_cap = 1e300; ///< values saturate here instead of overflowing
};

/// Throws ConfigError when the spec violates its invariants.
void validate(const PotentialSpec& spec);

/// Characteristic points of the shifted/modified SEP well, all in closed form:
/// the minimum at q_min = 0, the barrier top at q_max = -2/e, and the
/// vertical-tangent transition point at q_v = -1/e.
struct Landmarks {
    double q_min;  ///< position of the minimum (0)
    double q_max;  ///< position of the barrier top (-2/e)
    double q_v;    ///< transition point (-1/e)
    double v_max;  ///< alpha e^(1/e) (1 - e^(-2/e)), well depth
    double v_v;    ///< alpha (1 - e^(-1/e)), energy of the transition point
};

/// Evaluate the potential at q.  Never returns a non-finite value: anything
/// beyond spec.energy_cap saturates to exactly energy_cap.
double evaluate(const PotentialSpec& spec, double q);

/// Closed-form landmarks; only defined for sep_shifted and sep_modified.
Landmarks landmarks(const PotentialSpec& spec);

/// x ln|x| with the continuity convention 0 ln 0 := 0, so |x|^x -> 1 as x -> 0.
double xlogx(double x);

} // namespace sso
