#pragma once

#include "sso/potentials.hpp"

#include <utility>
#include <vector>

namespace sso {

/// Knobs for the semiclassical machinery.  The quantization rule is
/// S(E) = (n + maslov_offset) pi with hbar = 1; the offset is 1/2 for two
/// soft turning points and 1 for a hard-wall box.
struct WkbConfig {
    double maslov_offset = 0.5;
    int quad_points = 201;   ///< abscissae per smooth panel, >= 32
    double root_tol = 1e-10; ///< relative tolerance of the energy root solve
};

void validate(const WkbConfig& cfg);

struct ClassicalPeriodResult {
    double energy;
    double period;
    double q1;  ///< left turning point
    double q2;  ///< right turning point
};

/// Classical turning points V(q) = E bracketing the well minimum, located by
/// bracketed root solving to relative tolerance 1e-12.  Requires
/// 0 < E < v_max for the SEP families and E > 0 for power laws; anything
/// else throws std::domain_error.
std::pair<double, double> turning_points(const PotentialSpec& spec, double E);

/// One-way action  integral_{q1}^{q2} sqrt(2m (E - V(q))) dq  (hbar = 1).
/// The quadrature clusters points at the turning-point singularities and the
/// integration interval is split at interior non-smooth points (the SEP
/// transition point, the power-law origin).
double action_integral(const PotentialSpec& spec, double E, double mass,
                       int quad_points = 201);

/// Solve S(E) = (n + nu) pi for n = 0 .. n_max-1.  For the SEP families the
/// well holds only finitely many levels; the result is then shorter than
/// n_max (partial result, never an error).
std::vector<double> wkb_levels(const PotentialSpec& spec, int n_max,
                               const WkbConfig& cfg, double mass);

/// Closed-form WKB energies of the power-law oscillator with alpha = m = 1:
/// E_n = (1/2) [ (n + 1/2) sqrt(pi) Gamma(3/2 + 1/beta) / Gamma(1 + 1/beta) ]^(2 beta / (2 + beta)).
double powerlaw_wkb_closed_form(int n, double beta);

/// Classical oscillation period  T = sqrt(2m) integral (E - V)^(-1/2) dq
/// between the turning points, same singularity-aware quadrature.
ClassicalPeriodResult classical_period(const PotentialSpec& spec, double E,
                                       double mass, int quad_points = 201);

} // namespace sso
