#include "sso/config.hpp"
#include "sso/errors.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace sso {

namespace {

std::string trim(const std::string& s)
{
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& what)
{
    std::ostringstream os;
    os << "config line " << line << ": key '" << key << "': " << what;
    throw ConfigError(os.str());
}

double number(int line, const std::string& key, const std::string& v)
{
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        fail(line, key, "expected a number, got '" + v + "'");
    return x;
}

int integer(int line, const std::string& key, const std::string& v)
{
    char* end = nullptr;
    long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        fail(line, key, "expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

std::vector<double> list(int line, const std::string& key, const std::string& v)
{
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        fail(line, key, "expected a [a, b, ...] list, got '" + v + "'");
    std::vector<double> out;
    std::string body = v.substr(1, v.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            fail(line, key, "empty list element");
        out.push_back(number(line, key, item));
    }
    return out;
}

std::string bareword(const std::string& v)
{
    if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                          (v.front() == '\'' && v.back() == '\'')))
        return v.substr(1, v.size() - 2);
    return v;
}

} // namespace

RunConfig parse_config(const std::string& text)
{
    RunConfig cfg;
    cfg.source_text = text;
    std::set<std::string> seen;

    std::stringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        size_t hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;

        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "config line " << line_no << ": expected 'key = value', got '" << line << "'";
            throw ConfigError(os.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            fail(line_no, key.empty() ? "?" : key, "missing key or value");
        if (!seen.insert(key).second)
            fail(line_no, key, "duplicate key");

        const int ln = line_no;
        if (key == "potential.family") {
            try {
                cfg.potential.family = family_from_string(bareword(val));
            } catch (const ConfigError& e) {
                fail(ln, key, e.what());
            }
        } else if (key == "potential.alpha") {
            cfg.potential.alpha = number(ln, key, val);
        } else if (key == "potential.delta") {
            cfg.potential.delta = number(ln, key, val);
        } else if (key == "potential.beta") {
            cfg.potential.beta = number(ln, key, val);
        } else if (key == "potential.energy_cap") {
            cfg.potential.energy_cap = number(ln, key, val);
        } else if (key == "solver.hbar") {
            cfg.hbar = number(ln, key, val);
        } else if (key == "solver.mass") {
            cfg.mass = number(ln, key, val);
        } else if (key == "solver.k_states") {
            cfg.k_states = integer(ln, key, val);
        } else if (key == "solver.tol") {
            cfg.tol = number(ln, key, val);
        } else if (key == "solver.conv_tol") {
            cfg.conv_tol = number(ln, key, val);
        } else if (key == "solver.max_refine") {
            cfg.max_refine = integer(ln, key, val);
        } else if (key == "solver.q_lo") {
            cfg.q_lo = number(ln, key, val);
        } else if (key == "solver.q_hi") {
            cfg.q_hi = number(ln, key, val);
        } else if (key == "solver.n_points") {
            cfg.n_points = integer(ln, key, val);
        } else if (key == "solver.h") {
            cfg.h = number(ln, key, val);
        } else if (key == "analysis.moment_max") {
            cfg.moment_max = integer(ln, key, val);
        } else if (key == "analysis.sweep") {
            cfg.sweep = list(ln, key, val);
        } else if (key == "analysis.states") {
            cfg.state_indices.clear();
            for (double x : list(ln, key, val)) {
                if (x < 0 || x != static_cast<int>(x))
                    fail(ln, key, "state indices must be non-negative integers");
                cfg.state_indices.push_back(static_cast<int>(x));
            }
        } else if (key == "analysis.beta_list") {
            cfg.beta_list = list(ln, key, val);
        } else if (key == "analysis.maslov") {
            cfg.maslov = number(ln, key, val);
        } else if (key == "analysis.quad_points") {
            cfg.quad_points = integer(ln, key, val);
        } else if (key == "analysis.root_tol") {
            cfg.root_tol = number(ln, key, val);
        } else if (key == "analysis.period_points") {
            cfg.period_points = integer(ln, key, val);
        } else if (key == "analysis.e_max") {
            cfg.e_max = number(ln, key, val);
        } else if (key == "output.directory") {
            cfg.out_dir = bareword(val);
        } else if (key == "output.format") {
            cfg.format = bareword(val);
        } else if (key == "output.precision") {
            cfg.precision = integer(ln, key, val);
        } else {
            fail(ln, key, "unknown key");
        }
    }

    // cross-field constraints
    if (cfg.potential.family == Family::power_law && !seen.count("potential.beta"))
        throw ConfigError("potential.beta is required when potential.family = power_law");
    if (cfg.potential.family == Family::skewed && !seen.count("potential.delta"))
        throw ConfigError("potential.delta is required when potential.family = skewed");
    validate(cfg.potential);

    if (!(cfg.hbar > 0.0)) throw ConfigError("solver.hbar must be positive");
    if (!(cfg.mass > 0.0)) throw ConfigError("solver.mass must be positive");
    if (cfg.k_states < 1) throw ConfigError("solver.k_states must be at least 1");
    if (!(cfg.tol > 0.0)) throw ConfigError("solver.tol must be positive");
    if (!(cfg.conv_tol > 0.0)) throw ConfigError("solver.conv_tol must be positive");
    if (cfg.max_refine < 0 || cfg.max_refine > 12)
        throw ConfigError("solver.max_refine must lie in [0, 12]");

    const bool lo = seen.count("solver.q_lo"), hi = seen.count("solver.q_hi");
    if (lo != hi)
        throw ConfigError("solver.q_lo and solver.q_hi must be given together");
    if (lo && hi) {
        if (!(cfg.q_lo < cfg.q_hi))
            throw ConfigError("solver.q_lo must be less than solver.q_hi");
        cfg.has_domain = true;
    }
    if (seen.count("solver.n_points") && seen.count("solver.h"))
        throw ConfigError("solver.n_points and solver.h are mutually exclusive");
    if (seen.count("solver.n_points") && cfg.n_points < 9)
        throw ConfigError("solver.n_points must be at least 9");
    if (seen.count("solver.h") && !(cfg.h > 0.0))
        throw ConfigError("solver.h must be positive");

    if (cfg.moment_max < 0 || cfg.moment_max > 20)
        throw ConfigError("analysis.moment_max must lie in [0, 20]");
    for (double a : cfg.sweep)
        if (!(a > 0.0))
            throw ConfigError("analysis.sweep entries must be positive");
    for (double b : cfg.beta_list)
        if (!(b > 0.0))
            throw ConfigError("analysis.beta_list entries must be positive");
    if (!(cfg.maslov > 0.0))
        throw ConfigError("analysis.maslov must be positive");
    if (cfg.quad_points < 32)
        throw ConfigError("analysis.quad_points must be at least 32");
    if (!(cfg.root_tol > 0.0))
        throw ConfigError("analysis.root_tol must be positive");
    if (cfg.period_points < 2)
        throw ConfigError("analysis.period_points must be at least 2");
    if (cfg.e_max < 0.0)
        throw ConfigError("analysis.e_max must be non-negative");

    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("output.format must be csv or json");
    if (cfg.precision < 6 || cfg.precision > 17)
        throw ConfigError("output.precision must lie in [6, 17]");
    if (cfg.out_dir.empty())
        throw ConfigError("output.directory must not be empty");

    return cfg;
}

void override_alpha(RunConfig& cfg, double alpha)
{
    if (!(alpha > 0.0))
        throw ConfigError("--alpha must be positive");
    cfg.potential.alpha = alpha;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", alpha);
    cfg.source_text += "\npotential.alpha = " + std::string(buf) + " # cli override";
}

void override_k(RunConfig& cfg, int k)
{
    if (k < 1)
        throw ConfigError("--k must be at least 1");
    cfg.k_states = k;
    cfg.source_text += "\nsolver.k_states = " + std::to_string(k) + " # cli override";
}

} // namespace sso
