#include "optokerr/output.hpp"

#include "optokerr/errors.hpp"
#include "optokerr/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace optokerr {

using ordered_json = nlohmann::ordered_json;

namespace {

Cell opt(const std::optional<double>& v) {
    if (v) return *v;
    return std::monostate{};
}

Cell integer(long long v) { return v; }

}  // namespace

std::vector<std::string> sweep_columns(const std::vector<std::string>& axis_names,
                                       bool include_analytic) {
    std::vector<std::string> c{"curve", "point"};
    c.insert(c.end(), axis_names.begin(), axis_names.end());
    for (const char* name :
         {"branch_index", "branch_label", "branch_count", "bare_detuning", "intensity",
          "delta_eff", "delta_eff_wm", "g1", "g1_wm", "eta1", "eta2", "stable",
          "max_real_eigenvalue", "n_eff", "t_eff", "ground_state", "e_n", "photon_fluct",
          "linearization_ratio", "lyapunov_residual", "min_symplectic"}) {
        c.emplace_back(name);
    }
    if (include_analytic) {
        c.emplace_back("n_eff_approx");
        c.emplace_back("analytic_valid");
    }
    c.emplace_back("rh_disagreement");
    c.emplace_back("linearization_suspect");
    c.emplace_back("error");
    return c;
}

Table sweep_table(const std::vector<CurveRecords>& curves, bool include_analytic) {
    Table t;
    t.schema = std::string(sweep_schema);
    const std::vector<std::string> axes =
        curves.empty() ? std::vector<std::string>{} : curves.front().axis_names;
    for (const auto& c : curves) {
        if (c.axis_names != axes) throw ConfigError("curves in one table must share their axes");
    }
    t.columns = sweep_columns(axes, include_analytic);
    for (const auto& c : curves) {
        for (const SweepRecord& r : c.records) {
            std::vector<Cell> row;
            row.reserve(t.columns.size());
            row.emplace_back(c.label);
            row.push_back(integer(static_cast<long long>(r.point_index)));
            for (double v : r.axis_values) row.emplace_back(v);
            row.push_back(integer(r.branch_index));
            row.push_back(integer(r.branch_label));
            row.push_back(integer(r.branch_count));
            const bool have_branch = r.branch_index >= 0;
            auto value = [&](double v) -> Cell {
                if (have_branch) return v;
                return std::monostate{};
            };
            row.push_back(value(r.bare_detuning));
            row.push_back(value(r.intensity));
            row.push_back(value(r.delta_eff));
            row.push_back(value(r.delta_eff / c.omega_m));
            row.push_back(value(r.g1));
            row.push_back(value(r.g1 / c.omega_m));
            row.push_back(opt(r.eta1));
            row.push_back(opt(r.eta2));
            row.emplace_back(r.stable);
            row.push_back(value(r.max_real_eigenvalue));
            row.push_back(opt(r.n_eff));
            row.push_back(opt(r.t_eff));
            row.emplace_back(r.ground_state);
            row.push_back(opt(r.e_n));
            row.push_back(opt(r.photon_fluct));
            row.push_back(opt(r.linearization_ratio));
            row.push_back(opt(r.lyapunov_residual));
            row.push_back(opt(r.min_symplectic));
            if (include_analytic) {
                row.push_back(opt(r.n_eff_approx));
                row.emplace_back(r.analytic_valid);
            }
            row.emplace_back(r.rh_disagreement);
            row.emplace_back(r.linearization_suspect);
            row.emplace_back(r.error);
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

Table hysteresis_table(const std::vector<CurveTrace>& curves) {
    Table t;
    t.schema = std::string(hysteresis_schema);
    t.columns = {"curve", "direction", "step", "input_power", "p_mw", "intensity",
                 "branch_label", "branch_index", "stable", "jump"};
    for (const auto& c : curves) {
        for (const auto* dir : {"up", "down"}) {
            const auto& path = std::string_view(dir) == "up" ? c.trace.up : c.trace.down;
            for (std::size_t i = 0; i < path.size(); ++i) {
                const TracePoint& p = path[i];
                t.rows.push_back({c.label, std::string(dir), integer(static_cast<long long>(i)),
                                  p.input_power, p.input_power * 1e3, p.intensity,
                                  integer(p.branch_label), integer(p.branch_index), p.stable,
                                  p.jump});
            }
        }
    }
    return t;
}

Table table1_table(const std::vector<Table1Row>& rows) {
    Table t;
    t.schema = std::string(table1_schema);
    t.columns = {"curve", "g_kappa", "p_mw", "e_n", "delta_wm", "eta1", "eta2", "g1_wm",
                 "effective_detuning", "bare_detuning", "intensity", "n_eff", "t_eff",
                 "linearization_ratio", "found"};
    for (const auto& r : rows) {
        const SweepRecord& rec = r.maximum.record;
        const double wm = r.params.mech_freq;
        t.rows.push_back({r.label, r.params.opa_gain / r.params.cavity_decay,
                          r.params.input_power * 1e3, opt(rec.e_n),
                          r.maximum.effective_detuning / wm, opt(rec.eta1), opt(rec.eta2),
                          rec.g1 / wm, r.maximum.effective_detuning, rec.bare_detuning,
                          rec.intensity, opt(rec.n_eff), opt(rec.t_eff),
                          opt(rec.linearization_ratio), r.maximum.found});
    }
    return t;
}

Table select_columns(const Table& table, const std::vector<std::string>& names) {
    std::vector<std::size_t> idx;
    for (const auto& n : names) {
        const auto it = std::find(table.columns.begin(), table.columns.end(), n);
        if (it == table.columns.end()) throw ConfigError("unknown output column '" + n + "'");
        idx.push_back(static_cast<std::size_t>(it - table.columns.begin()));
    }
    Table out;
    out.schema = table.schema;
    out.columns = names;
    for (const auto& row : table.rows) {
        std::vector<Cell> r;
        for (std::size_t i : idx) r.push_back(row[i]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    q += '"';
    return q;
}

std::string cell_text(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "1" : "0"; }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, c);
}

ordered_json cell_json(const Cell& c) {
    struct Visitor {
        ordered_json operator()(std::monostate) const { return nullptr; }
        ordered_json operator()(double v) const {
            if (!std::isfinite(v)) return nullptr;
            return v;
        }
        ordered_json operator()(long long v) const { return v; }
        ordered_json operator()(bool v) const { return v; }
        ordered_json operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, c);
}

}  // namespace

void write_csv(std::ostream& out, const Table& t, bool gnuplot_header) {
    out << "#schema=" << t.schema << " engine=" << engine_version << '\n';
    if (gnuplot_header) {
        out << "#";
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << ' ' << (i + 1) << ':' << t.columns[i];
        out << '\n';
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out << ',';
        out << csv_field(t.columns[i]);
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << csv_field(cell_text(row[i]));
        }
        out << '\n';
    }
}

void write_jsonl(std::ostream& out, const Table& t) {
    ordered_json header;
    header["schema"] = t.schema;
    header["engine_version"] = std::string(engine_version);
    header["columns"] = t.columns;
    out << header.dump() << '\n';
    for (const auto& row : t.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
        out << obj.dump() << '\n';
    }
}

namespace {

// Splits CSV text into records, honouring quotes (which may span lines).
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        if (ch == '"') {
            quoted = true;
            any = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (ch == '\n' || ch == '\r') {
            if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !field.empty()) {
                fields.push_back(std::move(field));
                records.push_back(std::move(fields));
            }
            fields.clear();
            field.clear();
            any = false;
        } else {
            field += ch;
            any = true;
        }
    }
    if (quoted) throw ConfigError("CSV: unterminated quoted field");
    if (any || !field.empty()) {
        fields.push_back(std::move(field));
        records.push_back(std::move(fields));
    }
    return records;
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
    auto recs = parse_csv_records(line);
    if (recs.empty()) return {};
    return recs.front();
}

CsvDocument read_csv(std::istream& in) {
    CsvDocument doc;
    std::string line;
    std::ostringstream body;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!header_seen && !line.empty() && line.front() == '#') {
            constexpr std::string_view tag = "#schema=";
            if (line.rfind(tag, 0) == 0) {
                const std::string rest = line.substr(tag.size());
                doc.schema = rest.substr(0, rest.find(' '));
            }
            continue;
        }
        header_seen = true;
        body << line << '\n';
    }
    if (doc.schema.empty()) throw ConfigError("CSV: missing #schema line");
    auto records = parse_csv_records(body.str());
    if (records.empty()) throw ConfigError("CSV: missing header row");
    doc.columns = std::move(records.front());
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].size() != doc.columns.size()) {
            throw ConfigError("CSV: row " + std::to_string(i) + " has " +
                              std::to_string(records[i].size()) + " fields, expected " +
                              std::to_string(doc.columns.size()));
        }
        doc.rows.push_back(std::move(records[i]));
    }
    return doc;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer) {
    std::filesystem::path tmp = path;
    tmp += ".partial";
    try {
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
            writer(out);
            out.flush();
            if (!out) throw Error("write to '" + tmp.string() + "' failed");
        }
        std::filesystem::rename(tmp, path);
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw;
    }
}

namespace {

ordered_json params_object(const SystemParams& p) {
    ordered_json j = ordered_json::object();
    for (const auto& f : param_fields) j[std::string(f.name)] = p.*(f.member);
    return j;
}

}  // namespace

std::string params_json(const SystemParams& params) { return params_object(params).dump(2); }

std::string run_metadata_json(std::string_view schema, std::string_view source,
                              std::string_view kind, const std::vector<PresetCurve>& curves,
                              std::size_t row_count) {
    ordered_json j;
    j["schema"] = std::string(schema);
    j["engine_version"] = std::string(engine_version);
    j["source"] = std::string(source);
    j["kind"] = std::string(kind);
    j["rows"] = row_count;
    ordered_json list = ordered_json::array();
    for (const auto& c : curves) {
        ordered_json cj;
        cj["label"] = c.label;
        const SystemParams p = validated(c.spec.base);
        cj["params"] = params_object(p);
        const DerivedParams d = derive(p);
        cj["derived"] = {{"g0", d.g0}, {"epsilon", d.epsilon}, {"nbar", d.nbar}, {"beta", d.beta}};
        ordered_json axes = ordered_json::array();
        for (const Axis& a : c.spec.axes) {
            axes.push_back({{"parameter", a.parameter},
                            {"min", a.values.front()},
                            {"max", a.values.back()},
                            {"count", a.values.size()}});
        }
        cj["axes"] = axes;
        if (c.spec.fixed_effective_detuning) {
            cj["fixed_effective_detuning"] = *c.spec.fixed_effective_detuning;
        } else {
            cj["fixed_effective_detuning"] = nullptr;
        }
        cj["branch_policy"] = c.spec.branch_policy == BranchPolicy::all ? "all" : "continuity";
        list.push_back(cj);
    }
    j["curves"] = list;
    return j.dump(2);
}

}  // namespace optokerr
