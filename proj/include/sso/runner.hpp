#pragma once

#include "sso/config.hpp"
#include "sso/eigensolver.hpp"
#include "sso/table.hpp"

#include <string>
#include <vector>

namespace sso {

/// Solve with automatic grid control: the domain comes from the config
/// override or the suggestion heuristic, then h is halved (n -> 2n + 1)
/// until every tracked level drifts by less than conv_tol relative, up to
/// max_refine times.  Throws SolverError if the budget is exhausted before
/// the levels settle.
EigenSolution converged_solve(const RunConfig& cfg, const PotentialSpec& spec, int k);

/// Energy scale factor of the power-law oscillator relative to the
/// alpha = m = hbar = 1 convention: alpha^(2/(beta+2)) (hbar^2/m)^(beta/(beta+2)).
double powerlaw_energy_scale(double alpha, double mass, double hbar, double beta);

/// Run one of the figure-reproduction subcommands and return its tables:
///   gs-sweep  per-alpha ground-state energy, landmarks, mean and moments
///   spectrum  levels with spacings/ratios plus a summary (counts, landmarks)
///   states    per-state samples and a mu/m2/node summary
///   powerlaw  exact power-law levels and scaled spacings over a beta list
///   wkb       semiclassical vs exact energies
///   period    classical period samples across the well
std::vector<ResultTable> run_subcommand(const RunConfig& cfg, const std::string& name);

} // namespace sso
