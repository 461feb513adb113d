#include "sso/table.hpp"
#include "sso/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace sso {

namespace {

const char* TOOL_VERSION = "sso 0.1.0";

std::string format_double(double v, int precision)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*e", precision - 1, v);
    return buf;
}

std::string iso_utc(std::time_t t)
{
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

void ResultTable::add_row(std::vector<double> row)
{
    if (row.size() != schema.size())
        throw ConfigError("row width does not match the table schema");
    rows.push_back(std::move(row));
}

uint64_t fnv1a64(const std::string& data)
{
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Provenance make_provenance(const std::string& config_text)
{
    // wall-clock time would break byte-identical reruns, so the stamp comes
    // from SOURCE_DATE_EPOCH (reproducible-build convention) or a fixed epoch
    std::time_t t = 0;
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));

    char hash[32];
    std::snprintf(hash, sizeof hash, "fnv1a:%016llx",
                  static_cast<unsigned long long>(fnv1a64(config_text)));
    return {TOOL_VERSION, hash, iso_utc(t)};
}

std::string to_csv(const ResultTable& table, int precision)
{
    std::string out;
    out += "# table: " + table.name + "\n";
    out += "# tool: " + table.provenance.tool + "\n";
    out += "# config: " + table.provenance.config_hash + "\n";
    out += "# generated: " + table.provenance.timestamp + "\n";

    for (size_t c = 0; c < table.schema.size(); ++c) {
        if (c) out += ',';
        out += table.schema[c].name;
        if (!table.schema[c].unit.empty())
            out += '[' + table.schema[c].unit + ']';
    }
    out += '\n';

    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c], precision);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const ResultTable& table)
{
    nlohmann::ordered_json j;
    j["schema"] = nlohmann::ordered_json::array();
    for (const auto& col : table.schema)
        j["schema"].push_back({{"name", col.name}, {"unit", col.unit}});
    j["provenance"] = {{"tool", table.provenance.tool},
                       {"config", table.provenance.config_hash},
                       {"generated", table.provenance.timestamp}};
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto jr = nlohmann::ordered_json::array();
        for (double v : row) {
            if (std::isfinite(v))
                jr.push_back(v);
            else
                jr.push_back(nullptr);
        }
        j["rows"].push_back(std::move(jr));
    }
    return j.dump(2) + "\n";
}

void write_tables(const std::vector<ResultTable>& tables, const std::string& dir,
                  const std::string& format, int precision)
{
    if (format != "csv" && format != "json")
        throw ConfigError("output format must be csv or json");

    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + dir + "': " + ec.message());

    std::vector<std::pair<fs::path, fs::path>> staged;  // tmp -> final
    auto cleanup = [&staged]() {
        std::error_code ig;
        for (const auto& [tmp, fin] : staged)
            fs::remove(tmp, ig);
    };

    for (const auto& table : tables) {
        const fs::path final_path = fs::path(dir) / (table.name + "." + format);
        const fs::path tmp_path = fs::path(dir) / ("." + table.name + "." + format + ".tmp");
        std::ofstream os(tmp_path, std::ios::binary | std::ios::trunc);
        if (!os) {
            cleanup();
            throw IoError("cannot open '" + tmp_path.string() + "' for writing");
        }
        os << (format == "csv" ? to_csv(table, precision) : to_json(table));
        os.flush();
        if (!os.good()) {
            cleanup();
            throw IoError("write failed for '" + tmp_path.string() + "'");
        }
        staged.emplace_back(tmp_path, final_path);
    }

    for (const auto& [tmp, fin] : staged) {
        fs::rename(tmp, fin, ec);
        if (ec) {
            cleanup();
            throw IoError("cannot move '" + tmp.string() + "' into place: " + ec.message());
        }
    }
}

} // namespace sso
