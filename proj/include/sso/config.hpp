#pragma once

#include "sso/potentials.hpp"

#include <string>
#include <vector>

namespace sso {

/// Fully validated run description.  The config grammar is a flat key-value
/// dialect with dotted section names:
///
///     # comment
///     potential.family = sep_modified
///     potential.alpha  = 10000
///     analysis.sweep   = [1, 2, 5, 10]
///
/// Unknown keys, type mismatches and constraint violations raise ConfigError
/// naming the offending key and line.
struct RunConfig {
    PotentialSpec potential;

    // solver
    double hbar = 1.0;
    double mass = 1.0;
    int k_states = 60;
    double tol = 1e-10;      ///< eigensolver residual target, relative to ||H||
    double conv_tol = 1e-8;  ///< grid-refinement stop: max relative E drift
    int max_refine = 6;      ///< refinement budget (h halves each step)
    bool has_domain = false; ///< explicit q_lo/q_hi instead of the heuristic
    double q_lo = 0.0;
    double q_hi = 0.0;
    int n_points = 0;        ///< 0 = derive from the wavelength rule
    double h = 0.0;          ///< alternative to n_points, mutually exclusive

    // analysis
    int moment_max = 9;
    std::vector<double> sweep;        ///< alpha values for gs-sweep
    std::vector<int> state_indices;   ///< states to dump; empty = summary only
    std::vector<double> beta_list;    ///< exponents for powerlaw
    double maslov = 0.5;
    int quad_points = 201;
    double root_tol = 1e-10;
    int period_points = 25;
    double e_max = 0.0;               ///< period energy ceiling; 0 = v_max

    // output
    std::string out_dir = "out";
    std::string format = "csv";
    int precision = 17;

    /// Effective config text (file contents plus any CLI overrides that
    /// change computed values); hashed into the provenance header.
    std::string source_text;
};

RunConfig parse_config(const std::string& text);

/// Appends an override line to source_text and re-applies validation.
void override_alpha(RunConfig& cfg, double alpha);
void override_k(RunConfig& cfg, int k);

} // namespace sso
