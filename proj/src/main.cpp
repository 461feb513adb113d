#include "sso/config.hpp"
#include "sso/errors.hpp"
#include "sso/runner.hpp"
#include "sso/table.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

namespace {

// exit codes: 0 ok, 2 config error, 3 solver error, 4 I/O error
enum { EXIT_OK = 0, EXIT_CONFIG = 2, EXIT_SOLVER = 3, EXIT_IO = 4 };

std::string slurp(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw sso::IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    if (!is.good() && !is.eof())
        throw sso::IoError("error while reading '" + path + "'");
    return ss.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"sso: bound states and semiclassics of the superexponential "
                 "and power-law oscillators"};
    app.require_subcommand(1);

    std::string config_path, out_dir, format;
    double alpha = 0.0;
    int k = 0;

    const struct { const char* name; const char* help; } subs[] = {
        {"gs-sweep", "ground-state energy, mean and central moments over an alpha sweep"},
        {"spectrum", "energy levels, spacings and scaled spacings of the SEP well"},
        {"states",   "eigenstate samples plus per-state mean/variance/node summary"},
        {"powerlaw", "exact power-law spectra over a list of exponents"},
        {"wkb",      "semiclassical quantization compared against exact levels"},
        {"period",   "classical oscillation period across the well"},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
        sub->add_option("--format", format, "csv or json (overrides output.format)");
        sub->add_option("--alpha", alpha, "override potential.alpha");
        sub->add_option("--k", k, "override solver.k_states");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? EXIT_OK : EXIT_CONFIG;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        sso::RunConfig cfg = sso::parse_config(slurp(config_path));

        if (sub->count("--alpha"))
            sso::override_alpha(cfg, alpha);
        if (sub->count("--k"))
            sso::override_k(cfg, k);
        if (sub->count("--out")) {
            if (out_dir.empty())
                throw sso::ConfigError("--out must not be empty");
            cfg.out_dir = out_dir;  // presentation only: not hashed
        }
        if (sub->count("--format")) {
            if (format != "csv" && format != "json")
                throw sso::ConfigError("--format must be csv or json");
            cfg.format = format;
        }
        if (cfg.maslov != 0.5 && cfg.maslov != 1.0)
            std::fprintf(stderr, "note: analysis.maslov = %g is outside the standard "
                                 "presets 1/2 (soft turning points) and 1 (hard walls)\n",
                         cfg.maslov);

        const auto tables = sso::run_subcommand(cfg, sub->get_name());
        sso::write_tables(tables, cfg.out_dir, cfg.format, cfg.precision);

        for (const auto& t : tables)
            std::fprintf(stderr, "wrote %s/%s.%s (%zu rows)\n", cfg.out_dir.c_str(),
                         t.name.c_str(), cfg.format.c_str(), t.rows.size());
        return EXIT_OK;
    } catch (const sso::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return EXIT_CONFIG;
    } catch (const sso::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return EXIT_IO;
    } catch (const sso::SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return EXIT_SOLVER;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return EXIT_CONFIG;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return EXIT_SOLVER;
    }
}
