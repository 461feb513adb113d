#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sso {

struct Column {
    std::string name;
    std::string unit;  ///< empty for dimensionless quantities
};

struct Provenance {
    std::string tool;        ///< name and version
    std::string config_hash; ///< fnv1a:<16 hex digits> over the effective config
    std::string timestamp;   ///< ISO-8601 UTC; honors SOURCE_DATE_EPOCH, else epoch 0
};

/// Rectangular numeric table with a deterministic serialization.  Undefined
/// cells (e.g. the spacing of the lowest level) hold NaN, rendered as `nan`
/// in CSV and `null` in JSON.
struct ResultTable {
    std::string name;
    std::vector<Column> schema;
    std::vector<std::vector<double>> rows;
    Provenance provenance;

    void add_row(std::vector<double> row);
};

uint64_t fnv1a64(const std::string& data);

/// Provenance stamp for the given effective config text.
Provenance make_provenance(const std::string& config_text);

/// CSV: `# key: value` provenance comments, one header line of column names
/// (with `[unit]` suffixes), then rows in scientific notation with
/// `precision` significant digits, '\n' endings, no trailing separator.
std::string to_csv(const ResultTable& table, int precision);

/// JSON object {"schema", "provenance", "rows"}; rows are arrays of numbers
/// serialized with shortest round-trip precision.
std::string to_json(const ResultTable& table);

/// Write every table as <dir>/<name>.<format>.  All-or-nothing: each file is
/// staged to a temporary path first and the batch is renamed into place only
/// after every stage succeeded; on failure the temporaries are removed and
/// IoError is thrown.
void write_tables(const std::vector<ResultTable>& tables, const std::string& dir,
                  const std::string& format, int precision);

} // namespace sso
