// Acceptance gate: each numbered criterion prints one PASS/FAIL line with the
// measured values.  Run with a criterion number (1..12) or with no argument
// to run the full battery; the exit code is 0 only if every selected
// criterion passed.
#include "sso/config.hpp"
#include "sso/discretization.hpp"
#include "sso/eigensolver.hpp"
#include "sso/errors.hpp"
#include "sso/observables.hpp"
#include "sso/potentials.hpp"
#include "sso/runner.hpp"
#include "sso/semiclassics.hpp"
#include "sso/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace sso;
namespace fs = std::filesystem;

#ifndef SSO_CONFIG_DIR
#error "SSO_CONFIG_DIR must point at the checked-in figure configs"
#endif

namespace {

std::string fmt(const char* f, ...)
{
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

PotentialSpec harmonic()
{
    PotentialSpec s;
    s.family = Family::power_law;
    s.alpha = 1.0;
    s.beta = 2.0;
    return s;
}

PotentialSpec sep_modified(double alpha)
{
    PotentialSpec s;
    s.family = Family::sep_modified;
    s.alpha = alpha;
    return s;
}

RunConfig defaults()
{
    return parse_config("");
}

// The deep-well spectrum shared by criteria 2-5.  conv_tol is 1e-6 rather
// than the library default: levels above the plateau top have significant
// amplitude at the C1 junction q = -2/e, where the drift shrinks only ~4x
// per halving, so 1e-8 is unreachable at sane grid sizes.  Bound levels are
// h^8-clean and accurate to ~1e-9 relative at the grid this settles on.
const EigenSolution& deep_spectrum()
{
    static const EigenSolution sol = [] {
        RunConfig cfg = defaults();
        cfg.conv_tol = 1e-6;
        return converged_solve(cfg, sep_modified(1e4), 60);
    }();
    return sol;
}

double ratio_at(const std::vector<double>& E, int n)
{
    return (E[n + 1] - E[n]) / (E[n] - E[n - 1]);
}

// --------------------------------------------------------------- criterion 1

bool crit1(std::string& detail)
{
    const Grid g(-12.0, 12.0, 2399); // h = 0.01
    const auto H = assemble_hamiltonian(g, harmonic(), 1.0, 1.0);
    const auto E = solve_band_lowest(H, 30).energies;

    double worst_e = 0.0, worst_r = 0.0;
    for (int n = 0; n < 30; ++n)
        worst_e = std::max(worst_e, std::fabs(E[n] - (n + 0.5)));
    for (int n = 1; n < 29; ++n)
        worst_r = std::max(worst_r, std::fabs(ratio_at(E, n) - 1.0));

    detail = fmt("max |E_n - (n+1/2)| = %.3e (<= 1e-8), max |ratio - 1| = %.3e (<= 1e-8)",
                 worst_e, worst_r);
    return worst_e <= 1e-8 && worst_r <= 1e-8;
}

// --------------------------------------------------------------- criterion 2

bool crit2(std::string& detail)
{
    const auto& sol = deep_spectrum();
    const double v_max = landmarks(sep_modified(1e4)).v_max;
    const int nb = count_bound(sol.energies, v_max);

    const Grid g2(sol.grid.q_lo, sol.grid.q_hi, 2 * sol.grid.n_points + 1);
    const auto H2 = assemble_hamiltonian(g2, sep_modified(1e4), 1.0, 1.0);
    const int nb2 = count_bound(solve_band_lowest(H2, 60).energies, v_max);

    detail = fmt("bound states below v_max = %.4f: %d at n = %d, %d after halving h",
                 v_max, nb, sol.grid.n_points, nb2);
    return nb == 48 && nb2 == 48;
}

// --------------------------------------------------------------- criterion 3

bool crit3(std::string& detail)
{
    const auto& sol = deep_spectrum();
    const auto lm = landmarks(sep_modified(1e4));
    const auto rep = spacing_analysis(sol.energies, lm);
    const int bi = rep.branch_index;

    detail = fmt("v_v = %.4f sits between E_%d = %.4f and E_%d = %.4f "
                 "(branch index %d, accepted 20..22)",
                 lm.v_v, bi - 1, sol.energies[bi - 1], bi, sol.energies[bi], bi);
    return bi >= 20 && bi <= 22;
}

// --------------------------------------------------------------- criterion 4

bool crit4(std::string& detail)
{
    const auto& E = deep_spectrum().energies;
    const double v_max = landmarks(sep_modified(1e4)).v_max;
    const int nb = count_bound(E, v_max);

    std::vector<double> plateau;
    for (int n = 5; n <= 15; ++n)
        plateau.push_back(ratio_at(E, n));
    const double lo = *std::min_element(plateau.begin(), plateau.end());
    const double hi = *std::max_element(plateau.begin(), plateau.end());
    std::vector<double> sorted = plateau;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];

    int extrema = 0;
    for (int n = 30; n <= nb - 3; ++n) {
        const double a = ratio_at(E, n - 1), b = ratio_at(E, n), c = ratio_at(E, n + 1);
        if ((b - a) * (c - b) < 0.0)
            ++extrema;
    }

    const bool in_band = lo >= 1.000 && hi <= 1.020;
    const bool med_ok = std::fabs(median - 1.01) <= 0.005;
    detail = fmt("ratios n=5..15 in [%.5f, %.5f], median %.5f (target 1.01 +- 0.005); "
                 "%d local extrema beyond n=28 (need >= 3)",
                 lo, hi, median, extrema);
    return in_band && med_ok && extrema >= 3;
}

// --------------------------------------------------------------- criterion 5

bool crit5(std::string& detail)
{
    const auto& E = deep_spectrum().energies;
    const double v_max = landmarks(sep_modified(1e4)).v_max;
    const int nb = count_bound(E, v_max); // 48: bound levels are E_0..E_47

    const double r_cross = (E[nb] - E[nb - 1]) / (E[nb - 1] - E[nb - 2]);
    const double r_bound = (E[nb - 1] - E[nb - 2]) / (E[nb - 2] - E[nb - 3]);

    detail = fmt("dE_%d/dE_%d = %.4f (required < 0.5); bound-only reading "
                 "dE_%d/dE_%d = %.4f",
                 nb, nb - 1, r_cross, nb - 1, nb - 2, r_bound);
    return r_cross < 0.5;
}

// --------------------------------------------------------------- criterion 6

struct SweepPoint {
    double E0, mu, m2, v_v;
};

SweepPoint sweep_point(double alpha)
{
    RunConfig cfg = defaults();
    cfg.conv_tol = 1e-4; // moment targets are +-1e-2; the plateau junction
                         // limits the drift floor at small alpha
    const auto sol = converged_solve(cfg, sep_modified(alpha), 1);
    const auto rep = moment_report(sol.states[0], sol.grid, 2);
    return {sol.energies[0], rep.mu, rep.central_moments[2], landmarks(sep_modified(alpha)).v_v};
}

bool crit6(std::string& detail)
{
    const SweepPoint p1 = sweep_point(1.0), p2 = sweep_point(2.0),
                     p4 = sweep_point(4.0), p5 = sweep_point(5.0),
                     p8 = sweep_point(8.0), p10 = sweep_point(10.0),
                     p100 = sweep_point(100.0);

    const bool mu5 = std::fabs(p5.mu - 0.087) <= 0.01;
    const bool mu2 = std::fabs(p2.mu + 0.05) <= 0.02;
    const bool mu1 = std::fabs(p1.mu + 0.5) <= 0.05;
    const bool m210 = std::fabs(p10.m2 - 0.11) <= 0.01;
    const bool m21 = std::fabs(p1.m2 - 1.3) <= 0.1;
    const bool mumax = p10.mu > p2.mu && p10.mu > p5.mu && p10.mu > p100.mu;
    const bool cross = p4.E0 > p4.v_v && p8.E0 < p8.v_v;

    detail = fmt("mu(5)=%.4f mu(2)=%.4f mu(1)=%.4f m2(10)=%.4f m2(1)=%.4f; "
                 "mu max at 10 of {2,5,10,100}: %s; E_gs-v_v: %+.3f at 4, %+.3f at 8",
                 p5.mu, p2.mu, p1.mu, p10.m2, p1.m2, mumax ? "yes" : "no",
                 p4.E0 - p4.v_v, p8.E0 - p8.v_v);
    return mu5 && mu2 && mu1 && m210 && m21 && mumax && cross;
}

// --------------------------------------------------------------- criterion 7

bool crit7(std::string& detail)
{
    RunConfig cfg = defaults();
    cfg.conv_tol = 1e-6;
    const auto deep = converged_solve(cfg, sep_modified(1e4), 1);
    const auto md = moment_report(deep.states[0], deep.grid, 9).central_moments;

    bool chain = true;
    int break_at = -1;
    for (int n = 2; n < 9; ++n) {
        if (!(std::fabs(md[n]) > std::fabs(md[n + 1]))) {
            chain = false;
            if (break_at < 0) break_at = n;
        }
    }

    cfg.conv_tol = 1e-4;
    const auto soft = converged_solve(cfg, sep_modified(2.0), 1);
    const auto ms = moment_report(soft.states[0], soft.grid, 9).central_moments;

    bool rising = true;
    for (int n = 4; n < 9; ++n)
        rising = rising && std::fabs(ms[n + 1]) > std::fabs(ms[n]);
    bool odd_neg = true, odd_pos = true;
    for (int n = 3; n <= 9; ++n) {
        const bool neg = ms[n] < 0.0;
        if (n % 2 == 1) { odd_neg &= neg;  odd_pos &= !neg; }
        else            { odd_neg &= !neg; odd_pos &= neg;  }
    }
    const bool alternating = odd_neg || odd_pos;

    detail = fmt("alpha=1e4 |m_n| chain %s%s (|m3|=%.3e vs |m4|=%.3e); "
                 "alpha=2 rising n=4..9: %s, parity signs: %s",
                 chain ? "holds" : "breaks",
                 chain ? "" : fmt(" at n=%d", break_at).c_str(),
                 std::fabs(md[3]), std::fabs(md[4]),
                 rising ? "yes" : "no", alternating ? "yes" : "no");
    return chain && rising && alternating;
}

// --------------------------------------------------------------- criterion 8

bool crit8(std::string& detail)
{
    RunConfig cfg = defaults();
    cfg.conv_tol = 1e-4;
    const auto ref = converged_solve(cfg, sep_modified(2.0), 10); // m = 1, alpha = 2

    const auto H = assemble_hamiltonian(ref.grid, sep_modified(1.0), 1.0, 2.0);
    const auto scaled = solve_band_lowest(H, 10).energies; // m = 2, alpha = 1

    double worst = 0.0;
    for (int i = 0; i < 10; ++i)
        worst = std::max(worst, std::fabs(scaled[i] - 0.5 * ref.energies[i]) /
                                    std::fabs(0.5 * ref.energies[i]));
    detail = fmt("max relative deviation of E(m=2,a=1) vs E(m=1,a=2)/2: %.3e (<= 1e-8)",
                 worst);
    return worst <= 1e-8;
}

// --------------------------------------------------------------- criterion 9

bool crit9(std::string& detail)
{
    double worst_h = 0.0;
    for (int n = 0; n <= 20; ++n)
        worst_h = std::max(worst_h, std::fabs(powerlaw_wkb_closed_form(n, 2.0) - (n + 0.5)));

    const double lin0 = powerlaw_wkb_closed_form(0, 1.0);

    WkbConfig wc;
    double worst_inv = 0.0;
    for (double beta : {1.0, 4.0}) {
        PotentialSpec s = harmonic();
        s.beta = beta;
        const auto lv = wkb_levels(s, 21, wc, 1.0);
        if (lv.size() != 21) {
            detail = fmt("wkb_levels returned %zu of 21 roots at beta=%g", lv.size(), beta);
            return false;
        }
        for (int n = 0; n <= 20; ++n) {
            const double want = powerlaw_wkb_closed_form(n, beta);
            worst_inv = std::max(worst_inv, std::fabs(lv[n] - want) / want);
        }
    }

    detail = fmt("beta=2 closed form off half-integers by %.2e (<= 1e-12); "
                 "E_0(beta=1) = %.6f (target 0.557730 +- 1e-5); "
                 "root-solve vs closed form worst rel %.2e (<= 1e-6)",
                 worst_h, lin0, worst_inv);
    return worst_h <= 1e-12 && std::fabs(lin0 - 0.557730) <= 1e-5 && worst_inv <= 1e-6;
}

// -------------------------------------------------------------- criterion 10

bool crit10(std::string& detail)
{
    RunConfig cfg = defaults();
    cfg.k_states = 30;
    cfg.conv_tol = 1e-3; // the |q|^beta cusp limits convergence to ~h^(1+beta)
    cfg.max_refine = 8;  // for beta < 2; ratio structure settles much earlier

    auto ratios = [&](double beta) {
        PotentialSpec s = harmonic();
        s.beta = beta;
        const auto E = converged_solve(cfg, s, 30).energies;
        std::vector<double> r;
        for (int n = 1; n <= 28; ++n)
            r.push_back(ratio_at(E, n));
        return r;
    };

    bool ok = true;
    std::string parts;
    for (double beta : {4.0, 6.0}) {
        const auto r = ratios(beta);
        bool above = true, dec = true;
        for (size_t i = 0; i < r.size(); ++i) {
            above &= r[i] > 1.0;
            if (i) dec &= r[i] < r[i - 1] + 1e-12;
        }
        ok &= above && dec;
        parts += fmt("b=%g: >1 %s, dec %s; ", beta, above ? "all" : "NOT",
                     dec ? "yes" : "no");
    }
    for (double beta : {1.0, 0.5}) {
        const auto r = ratios(beta);
        const int below = static_cast<int>(std::count_if(
            r.begin(), r.end(), [](double v) { return v < 1.0; }));
        ok &= below > static_cast<int>(r.size()) / 2;
        parts += fmt("b=%g: %d/%zu below 1; ", beta, below, r.size());
    }
    {
        const auto r = ratios(0.1);
        int changes = 0;
        for (size_t i = 2; i < r.size(); ++i) {
            const double d1 = r[i - 1] - r[i - 2], d2 = r[i] - r[i - 1];
            if (d1 * d2 < 0.0)
                ++changes;
        }
        ok &= changes >= 3;
        parts += fmt("b=0.1: %d sign changes (need >= 3)", changes);
    }
    detail = parts;
    return ok;
}

// -------------------------------------------------------------- criterion 11

bool crit11(std::string& detail)
{
    PotentialSpec s;
    s.family = Family::sep_shifted;
    s.alpha = 1.0;
    const auto lm = landmarks(s);

    auto midpoints = [](double lo, double hi) {
        std::vector<double> e;
        for (int j = 0; j < 5; ++j)
            e.push_back(lo + (hi - lo) * (j + 0.5) / 5.0);
        return e;
    };

    bool dec = true, inc = true;
    double t_prev = 0.0;
    for (double e : midpoints(0.1 * lm.v_v, 0.9 * lm.v_v)) {
        const double t = classical_period(s, e, 1.0).period;
        if (t_prev > 0.0) dec &= t < t_prev;
        t_prev = t;
    }
    t_prev = 0.0;
    for (double e : midpoints(1.05 * lm.v_v, 0.95 * lm.v_max)) {
        const double t = classical_period(s, e, 1.0).period;
        if (t_prev > 0.0) inc &= t > t_prev;
        t_prev = t;
    }

    // S is the one-way action, so the closed-orbit identity is 2 dS/dE = T
    double worst = 0.0;
    for (double c : {0.2, 0.5, 0.8, 1.3, 2.0}) {
        const double e = c * lm.v_v, de = 1e-4 * e;
        const double dsde =
            (action_integral(s, e + de, 1.0) - action_integral(s, e - de, 1.0)) / (2.0 * de);
        const double t = classical_period(s, e, 1.0).period;
        worst = std::max(worst, std::fabs(2.0 * dsde - t) / t);
    }

    detail = fmt("T decreasing on (0.1, 0.9) v_v: %s; increasing on (1.05 v_v, 0.95 v_max): %s; "
                 "max |2 dS/dE - T|/T = %.2e (<= 1e-4)",
                 dec ? "yes" : "no", inc ? "yes" : "no", worst);
    return dec && inc && worst <= 1e-4;
}

// -------------------------------------------------------------- criterion 12

bool overlaps_ok(const EigenSolution& sol, int k, double& worst)
{
    for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
            double dot = 0.0;
            for (int i = 0; i < sol.grid.n_points; ++i)
                dot += sol.states[a][i] * sol.states[b][i];
            dot *= sol.grid.h;
            worst = std::max(worst, std::fabs(dot - (a == b ? 1.0 : 0.0)));
        }
    }
    return worst <= 1e-8;
}

bool nodes_ok(const EigenSolution& sol)
{
    for (int n = 0; n <= 15; ++n)
        if (node_count(sol.states[n]) != n)
            return false;
    return true;
}

bool crit12(std::string& detail)
{
    // (a), (b): orthonormality and node counts on both benchmark problems
    const Grid gh(-10.0, 10.0, 999);
    const auto solh = solve_lowest(assemble_hamiltonian(gh, harmonic(), 1.0, 1.0), gh, 16);
    RunConfig cfg = defaults();
    cfg.conv_tol = 1e-6;
    const auto sols = converged_solve(cfg, sep_modified(1e4), 16);

    double worst_ov = 0.0;
    const bool ortho = overlaps_ok(solh, 16, worst_ov) && overlaps_ok(sols, 16, worst_ov);
    const bool nodes = nodes_ok(solh) && nodes_ok(sols);

    // (c): kinetic stencil exact on polynomials through degree 8
    double worst_poly = 0.0;
    {
        const Grid g(-1.0, 1.0, 39);
        auto H = assemble_hamiltonian(g, harmonic(), 1.0, 1.0);
        for (int i = 0; i < H.n; ++i) {
            const double q = g.q(i);
            H.at(i, i) -= 0.5 * q * q;
        }
        std::vector<double> x(H.n), y;
        for (int k = 0; k <= 8; ++k) {
            for (int i = 0; i < H.n; ++i) x[i] = std::pow(g.q(i), k);
            H.apply(x, y);
            double scale = 1.0, err = 0.0;
            for (int i = 4; i < H.n - 4; ++i) {
                const double want =
                    k < 2 ? 0.0 : -0.5 * k * (k - 1) * std::pow(g.q(i), k - 2);
                scale = std::max(scale, std::fabs(want));
                err = std::max(err, std::fabs(y[i] - want));
            }
            worst_poly = std::max(worst_poly, err / scale);
        }
    }

    // (d): h^8 convergence slope on the harmonic ground state
    auto e0_at = [&](int n) {
        const Grid g(-10.0, 10.0, n);
        return solve_band_lowest(assemble_hamiltonian(g, harmonic(), 1.0, 1.0), 1).energies[0];
    };
    const double slope =
        std::log2(std::fabs(e0_at(79) - 0.5) / std::fabs(e0_at(159) - 0.5));

    // (e): byte-identical rerun of every checked-in figure config
    struct FigRun {
        const char* file;
        const char* subcommand;
    };
    const FigRun figs[] = {
        {"fig2.cfg", "gs-sweep"}, {"fig3.cfg", "states"},   {"fig4.cfg", "gs-sweep"},
        {"fig5.cfg", "gs-sweep"}, {"fig6.cfg", "spectrum"}, {"fig7.cfg", "states"},
        {"fig8.cfg", "states"},   {"fig9.cfg", "powerlaw"}, {"wkb.cfg", "wkb"},
        {"period.cfg", "period"},
    };
    const fs::path scratch = fs::temp_directory_path() / "sso_acceptance_reruns";
    fs::remove_all(scratch);
    std::string bad_fig;
    for (const auto& f : figs) {
        std::ifstream is(fs::path(SSO_CONFIG_DIR) / f.file, std::ios::binary);
        std::ostringstream os;
        os << is.rdbuf();
        if (!is.good() && !is.eof()) {
            bad_fig = fmt("%s (unreadable)", f.file);
            break;
        }
        const RunConfig rc = parse_config(os.str());
        const auto run1 = run_subcommand(rc, f.subcommand);
        const auto run2 = run_subcommand(rc, f.subcommand);

        const fs::path d1 = scratch / f.file / "a", d2 = scratch / f.file / "b";
        write_tables(run1, d1.string(), rc.format, rc.precision);
        write_tables(run2, d2.string(), rc.format, rc.precision);

        bool same = run1.size() == run2.size() && !run1.empty();
        for (size_t i = 0; same && i < run1.size(); ++i) {
            const fs::path p1 = d1 / (run1[i].name + "." + rc.format);
            const fs::path p2 = d2 / (run2[i].name + "." + rc.format);
            std::ifstream a(p1, std::ios::binary), b(p2, std::ios::binary);
            std::ostringstream sa, sb;
            sa << a.rdbuf();
            sb << b.rdbuf();
            same = sa.str() == sb.str() && !sa.str().empty() &&
                   to_json(run1[i]) == to_json(run2[i]);
        }
        if (!same) {
            bad_fig = f.file;
            break;
        }
    }
    fs::remove_all(scratch);

    detail = fmt("overlap dev %.2e (<= 1e-8); node counts %s; stencil rel err %.2e "
                 "(<= 1e-10); h^8 slope %.2f (in [7, 9]); reruns %s",
                 worst_ov, nodes ? "ok" : "WRONG", worst_poly, slope,
                 bad_fig.empty() ? "byte-identical" : ("differ: " + bad_fig).c_str());
    return ortho && nodes && worst_poly <= 1e-10 && slope >= 7.0 && slope <= 9.0 &&
           bad_fig.empty();
}

} // namespace

int main(int argc, char** argv)
{
    using CritFn = bool (*)(std::string&);
    const CritFn fns[12] = {crit1, crit2, crit3, crit4,  crit5,  crit6,
                            crit7, crit8, crit9, crit10, crit11, crit12};

    int first = 1, last = 12;
    if (argc > 1) {
        const int idx = std::atoi(argv[1]);
        if (idx < 1 || idx > 12) {
            std::fprintf(stderr, "usage: %s [criterion 1..12]\n", argv[0]);
            return 2;
        }
        first = last = idx;
    }

    bool all_ok = true;
    for (int i = first; i <= last; ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = fns[i - 1](detail);
        } catch (const std::exception& e) {
            detail = fmt("exception: %s", e.what());
        }
        std::printf("[criterion %2d] %s — %s\n", i, ok ? "PASS" : "FAIL", detail.c_str());
        std::fflush(stdout);
        all_ok &= ok;
    }
    return all_ok ? 0 : 1;
}
