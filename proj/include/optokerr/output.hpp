#pragma once

#include "optokerr/presets.hpp"
#include "optokerr/sweep.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace optokerr {

inline constexpr std::string_view engine_version = "0.1.0";
inline constexpr std::string_view sweep_schema = "optokerr.sweep.v1";
inline constexpr std::string_view hysteresis_schema = "optokerr.hysteresis.v1";
inline constexpr std::string_view table1_schema = "optokerr.table1.v1";

// Absent values (unstable branches, undefined parameters) are monostate.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
    std::string schema;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct CurveRecords {
    std::string label;
    std::vector<std::string> axis_names;
    double omega_m = 0.0;
    std::vector<SweepRecord> records;
};

// Column names of the sweep schema for the given axes.
std::vector<std::string> sweep_columns(const std::vector<std::string>& axis_names,
                                       bool include_analytic);

Table sweep_table(const std::vector<CurveRecords>& curves, bool include_analytic);

struct CurveTrace {
    std::string label;
    HysteresisTrace trace;
};
Table hysteresis_table(const std::vector<CurveTrace>& curves);

struct Table1Row {
    std::string label;
    SystemParams params;
    EntanglementMaximum maximum;
};
Table table1_table(const std::vector<Table1Row>& rows);

// Keeps the named columns in the given order. Throws ConfigError for an
// unknown name.
Table select_columns(const Table& table, const std::vector<std::string>& names);

// CSV: a "#schema=..." line, an optional gnuplot column-index comment, the
// header row, then one row per record. Quoting follows RFC 4180.
void write_csv(std::ostream& out, const Table& table, bool gnuplot_header = false);
// JSON lines: a header object with schema and columns, then one object per row.
void write_jsonl(std::ostream& out, const Table& table);

struct CsvDocument {
    std::string schema;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};
// Throws ConfigError on malformed input.
CsvDocument read_csv(std::istream& in);
std::vector<std::string> split_csv_line(std::string_view line);

// Writes through a temporary file that is renamed into place, so a failure
// never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

std::string params_json(const SystemParams& params);
// Sidecar describing a run: schema, engine version, every curve's resolved
// parameters and axes.
std::string run_metadata_json(std::string_view schema, std::string_view source,
                              std::string_view kind, const std::vector<PresetCurve>& curves,
                              std::size_t row_count);

}  // namespace optokerr
