#include "sso/runner.hpp"
#include "sso/errors.hpp"
#include "sso/observables.hpp"
#include "sso/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace sso {

namespace {

constexpr double NAN_CELL = std::numeric_limits<double>::quiet_NaN();

bool is_sep_well(const PotentialSpec& spec)
{
    return spec.family == Family::sep_shifted || spec.family == Family::sep_modified;
}

void require_sep_well(const PotentialSpec& spec, const std::string& sub)
{
    if (!is_sep_well(spec))
        throw ConfigError("subcommand '" + sub + "' needs potential.family = "
                          "sep_shifted or sep_modified");
}

// Energy headroom used to size power-law domains: a few levels above the
// requested count, converted to physical units.
double powerlaw_ecap(const RunConfig& cfg, const PotentialSpec& spec, int k)
{
    const double scale = powerlaw_energy_scale(spec.alpha, cfg.mass, cfg.hbar, spec.beta);
    return scale * powerlaw_wkb_closed_form(k + 3, spec.beta);
}

std::string state_table_name(int n)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "state_%02d", n);
    return buf;
}

ResultTable make_table(const RunConfig& cfg, std::string name, std::vector<Column> schema)
{
    ResultTable t;
    t.name = std::move(name);
    t.schema = std::move(schema);
    t.provenance = make_provenance(cfg.source_text);
    return t;
}

// Spacing dE_n = E_n - E_{n-1} (defined for n >= 1) and the scaled spacing
// dE_{n+1}/dE_n (defined for 1 <= n <= N-2); NaN marks undefined cells.
void spacing_cells(const std::vector<double>& E, size_t n, double& de, double& ratio)
{
    de = n >= 1 ? E[n] - E[n - 1] : NAN_CELL;
    ratio = (n >= 1 && n + 1 < E.size())
                ? (E[n + 1] - E[n]) / (E[n] - E[n - 1])
                : NAN_CELL;
}

} // namespace

double powerlaw_energy_scale(double alpha, double mass, double hbar, double beta)
{
    return std::pow(alpha, 2.0 / (beta + 2.0)) *
           std::pow(hbar * hbar / mass, beta / (beta + 2.0));
}

EigenSolution converged_solve(const RunConfig& cfg, const PotentialSpec& spec, int k)
{
    validate(spec);
    if (k < 1)
        throw ConfigError("state count must be at least 1");

    const double ecap = is_sep_well(spec) ? 0.0 : powerlaw_ecap(cfg, spec, k);

    double q_lo, q_hi;
    int n = 0;
    if (cfg.has_domain) {
        q_lo = cfg.q_lo;
        q_hi = cfg.q_hi;
    } else {
        const DomainSuggestion s = suggest_domain(spec, ecap, cfg.hbar, cfg.mass);
        q_lo = s.q_lo;
        q_hi = s.q_hi;
        n = s.n_points;
    }
    if (cfg.n_points > 0) {
        n = cfg.n_points;
    } else if (cfg.h > 0.0) {
        n = Grid::points_for_spacing(q_lo, q_hi, cfg.h);
    } else if (n == 0) {
        // explicit domain, automatic resolution: wavelength rule
        const double ec = is_sep_well(spec) ? landmarks(spec).v_max : ecap;
        const double lambda = 2.0 * M_PI * cfg.hbar / std::sqrt(2.0 * cfg.mass * ec);
        n = Grid::points_for_spacing(q_lo, q_hi, lambda / 10.0);
    }
    n = std::max(n, k);

    auto solve_at = [&](int points) {
        const Grid grid(q_lo, q_hi, points);
        const BandedHamiltonian H = assemble_hamiltonian(grid, spec, cfg.hbar, cfg.mass);
        return solve_lowest(H, grid, k, cfg.tol);
    };

    EigenSolution cur = solve_at(n);
    for (int r = 0; r < cfg.max_refine; ++r) {
        n = 2 * n + 1;  // halves h exactly
        EigenSolution next = solve_at(n);
        double drift = 0.0;
        for (int i = 0; i < k; ++i)
            drift = std::max(drift, std::fabs(next.energies[i] - cur.energies[i]) /
                                        std::max(std::fabs(next.energies[i]), 1.0));
        cur = std::move(next);
        if (drift < cfg.conv_tol)
            return cur;
    }
    if (cfg.max_refine == 0)
        return cur;  // refinement disabled: caller owns the accuracy question
    throw SolverError("grid refinement exhausted its budget before the "
                      "spectrum settled; raise solver.max_refine or loosen "
                      "solver.conv_tol");
}

namespace {

std::vector<ResultTable> run_gs_sweep(const RunConfig& cfg)
{
    require_sep_well(cfg.potential, "gs-sweep");
    if (cfg.sweep.empty())
        throw ConfigError("gs-sweep needs a non-empty analysis.sweep list");
    const int m_max = std::max(cfg.moment_max, 2);

    std::vector<Column> cols{{"alpha", "energy"}, {"E_gs", "energy"},
                             {"v_v", "energy"},   {"v_max", "energy"},
                             {"mu", "length"}};
    for (int n = 2; n <= m_max; ++n)
        cols.push_back({"m_" + std::to_string(n), "length^" + std::to_string(n)});
    ResultTable t = make_table(cfg, "gs_sweep", std::move(cols));

    for (double alpha : cfg.sweep) {
        PotentialSpec spec = cfg.potential;
        spec.alpha = alpha;
        EigenSolution sol = [&] {
            try {
                return converged_solve(cfg, spec, 1);
            } catch (const SolverError& e) {
                throw SolverError("at sweep point alpha = " + std::to_string(alpha) +
                                  ": " + e.what(), e.failed_index);
            }
        }();
        const Landmarks lm = landmarks(spec);
        const MomentReport rep = moment_report(sol.states[0], sol.grid, m_max);

        std::vector<double> row{alpha, sol.energies[0], lm.v_v, lm.v_max, rep.mu};
        for (int n = 2; n <= m_max; ++n)
            row.push_back(rep.central_moments[n]);
        t.add_row(std::move(row));
    }
    return {std::move(t)};
}

std::vector<ResultTable> run_spectrum(const RunConfig& cfg)
{
    require_sep_well(cfg.potential, "spectrum");
    const EigenSolution sol = converged_solve(cfg, cfg.potential, cfg.k_states);
    const Landmarks lm = landmarks(cfg.potential);
    const SpectrumReport rep = spacing_analysis(sol.energies, lm);

    ResultTable levels = make_table(cfg, "spectrum_levels",
                                    {{"n", ""},
                                     {"E_n", "energy"},
                                     {"dE_n", "energy"},
                                     {"ratio_n", ""},
                                     {"bound", ""}});
    for (size_t n = 0; n < sol.energies.size(); ++n) {
        double de, ratio;
        spacing_cells(sol.energies, n, de, ratio);
        levels.add_row({static_cast<double>(n), sol.energies[n], de, ratio,
                        sol.energies[n] < lm.v_max ? 1.0 : 0.0});
    }

    ResultTable summary = make_table(cfg, "spectrum_summary",
                                     {{"alpha", "energy"},
                                      {"bound_count", ""},
                                      {"branch_index", ""},
                                      {"v_v", "energy"},
                                      {"v_max", "energy"}});
    summary.add_row({cfg.potential.alpha, static_cast<double>(rep.bound_count),
                     static_cast<double>(rep.branch_index), lm.v_v, lm.v_max});

    std::vector<ResultTable> out;
    out.push_back(std::move(levels));
    out.push_back(std::move(summary));
    return out;
}

std::vector<ResultTable> run_states(const RunConfig& cfg)
{
    require_sep_well(cfg.potential, "states");
    int k = cfg.k_states;
    for (int idx : cfg.state_indices)
        k = std::max(k, idx + 1);

    const EigenSolution sol = converged_solve(cfg, cfg.potential, k);

    ResultTable summary = make_table(cfg, "states_summary",
                                     {{"n", ""},
                                      {"E_n", "energy"},
                                      {"mu_n", "length"},
                                      {"m2_n", "length^2"},
                                      {"nodes", ""}});
    for (int n = 0; n < k; ++n) {
        const MomentReport rep = moment_report(sol.states[n], sol.grid, 2);
        summary.add_row({static_cast<double>(n), sol.energies[n], rep.mu,
                         rep.central_moments[2], static_cast<double>(node_count(sol.states[n]))});
    }

    std::vector<ResultTable> out;
    out.push_back(std::move(summary));
    for (int idx : cfg.state_indices) {
        ResultTable t = make_table(cfg, state_table_name(idx),
                                   {{"q", "length"}, {"psi", "length^-1/2"}});
        const auto& psi = sol.states[idx];
        for (int i = 0; i < sol.grid.n_points; ++i)
            t.add_row({sol.grid.q(i), psi[i]});
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<ResultTable> run_powerlaw(const RunConfig& cfg)
{
    if (cfg.potential.family != Family::power_law)
        throw ConfigError("subcommand 'powerlaw' needs potential.family = power_law");
    if (cfg.beta_list.empty())
        throw ConfigError("powerlaw needs a non-empty analysis.beta_list");

    ResultTable t = make_table(cfg, "powerlaw_levels",
                               {{"beta", ""},
                                {"n", ""},
                                {"E_n", "energy"},
                                {"dE_n", "energy"},
                                {"ratio_n", ""}});
    for (double beta : cfg.beta_list) {
        PotentialSpec spec = cfg.potential;
        spec.beta = beta;
        EigenSolution sol = [&] {
            try {
                return converged_solve(cfg, spec, cfg.k_states);
            } catch (const SolverError& e) {
                throw SolverError("at sweep point beta = " + std::to_string(beta) +
                                  ": " + e.what(), e.failed_index);
            }
        }();
        for (size_t n = 0; n < sol.energies.size(); ++n) {
            double de, ratio;
            spacing_cells(sol.energies, n, de, ratio);
            t.add_row({beta, static_cast<double>(n), sol.energies[n], de, ratio});
        }
    }
    return {std::move(t)};
}

std::vector<ResultTable> run_wkb(const RunConfig& cfg)
{
    const PotentialSpec& spec = cfg.potential;
    if (!is_sep_well(spec) && spec.family != Family::power_law)
        throw ConfigError("subcommand 'wkb' needs a sep_shifted, sep_modified "
                          "or power_law potential");

    const EigenSolution sol = converged_solve(cfg, spec, cfg.k_states);
    const WkbConfig wc{cfg.maslov, cfg.quad_points, cfg.root_tol};
    const std::vector<double> wkb = wkb_levels(spec, cfg.k_states, wc, cfg.mass);
    const size_t count = std::min(wkb.size(), sol.energies.size());

    const bool closed = spec.family == Family::power_law;
    std::vector<Column> cols{{"n", ""},
                             {"E_wkb", "energy"},
                             {"E_exact", "energy"},
                             {"rel_err", ""}};
    if (closed)
        cols.push_back({"E_closed_form", "energy"});
    ResultTable t = make_table(cfg, "wkb_compare", std::move(cols));

    const double scale = closed
        ? powerlaw_energy_scale(spec.alpha, cfg.mass, cfg.hbar, spec.beta) : 0.0;
    for (size_t n = 0; n < count; ++n) {
        std::vector<double> row{static_cast<double>(n), wkb[n], sol.energies[n],
                                (wkb[n] - sol.energies[n]) / sol.energies[n]};
        if (closed)
            row.push_back(scale * powerlaw_wkb_closed_form(static_cast<int>(n), spec.beta));
        t.add_row(std::move(row));
    }
    return {std::move(t)};
}

std::vector<ResultTable> run_period(const RunConfig& cfg)
{
    const PotentialSpec& spec = cfg.potential;
    double e_hi;
    if (is_sep_well(spec)) {
        const double v_max = landmarks(spec).v_max;
        e_hi = cfg.e_max > 0.0 ? std::min(cfg.e_max, v_max * (1.0 - 1e-9))
                               : v_max * (1.0 - 1e-9);
    } else if (spec.family == Family::power_law) {
        if (!(cfg.e_max > 0.0))
            throw ConfigError("period over a power law needs analysis.e_max > 0");
        e_hi = cfg.e_max;
    } else {
        throw ConfigError("subcommand 'period' needs a sep_shifted, sep_modified "
                          "or power_law potential");
    }

    ResultTable t = make_table(cfg, "period_samples",
                               {{"E", "energy"},
                                {"T", "time"},
                                {"q1", "length"},
                                {"q2", "length"},
                                {"S", "action"}});
    const int m = cfg.period_points;
    for (int j = 0; j < m; ++j) {
        const double E = e_hi * (j + 0.5) / m;  // midpoints keep E inside (0, e_hi)
        const ClassicalPeriodResult r = classical_period(spec, E, cfg.mass, cfg.quad_points);
        const double S = action_integral(spec, E, cfg.mass, cfg.quad_points);
        t.add_row({r.energy, r.period, r.q1, r.q2, S});
    }
    return {std::move(t)};
}

} // namespace

std::vector<ResultTable> run_subcommand(const RunConfig& cfg, const std::string& name)
{
    if (name == "gs-sweep") return run_gs_sweep(cfg);
    if (name == "spectrum") return run_spectrum(cfg);
    if (name == "states")   return run_states(cfg);
    if (name == "powerlaw") return run_powerlaw(cfg);
    if (name == "wkb")      return run_wkb(cfg);
    if (name == "period")   return run_period(cfg);
    throw ConfigError("unknown subcommand '" + name + "'");
}

} // namespace sso
