#include "optokerr/cli.hpp"

#include "optokerr/analysis.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/format.hpp"
#include "optokerr/output.hpp"
#include "optokerr/presets.hpp"
#include "optokerr/self_check.hpp"
#include "optokerr/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace optokerr {

namespace {

using ordered_json = nlohmann::ordered_json;

struct ParamOptions {
    std::string config;
    std::vector<std::string> sets;
    std::optional<double> kappa_wm;
    std::optional<double> g_kappa;
    std::optional<double> delta0_wm;
    std::optional<double> p_mw;
    std::optional<double> theta_pi;
    std::optional<double> chi;
    std::optional<double> t0_mk;
    std::optional<double> gamma_m;
    std::optional<double> gamma_m_hz;
};

void add_param_options(CLI::App* app, ParamOptions& o, bool with_config) {
    if (with_config) {
        app->add_option("--config", o.config,
                        std::string("key = value parameter file (default: $") + config_env_var + ")");
    }
    app->add_option("--set", o.sets, "override one field in SI units, e.g. --set input_power=5e-3");
    app->add_option("--kappa-wm", o.kappa_wm, "cavity decay rate in units of omega_m");
    app->add_option("--g-kappa", o.g_kappa, "OPA gain in units of kappa");
    app->add_option("--delta0-wm", o.delta0_wm, "bare detuning in units of omega_m");
    app->add_option("--p-mw", o.p_mw, "input power in mW");
    app->add_option("--theta-pi", o.theta_pi, "OPA phase in units of pi");
    app->add_option("--chi", o.chi, "Kerr coefficient in 1/s");
    app->add_option("--t0-mk", o.t0_mk, "bath temperature in mK");
    app->add_option("--gamma-m", o.gamma_m, "mechanical damping in rad/s");
    app->add_option("--gamma-m-hz", o.gamma_m_hz, "mechanical damping in Hz (multiplied by 2 pi)");
}

SystemParams base_params(const ParamOptions& o) {
    if (!o.config.empty()) return load_config(o.config);
    if (const char* env = std::getenv(config_env_var); env && *env) return load_config(env);
    return SystemParams{};
}

SystemParams apply_overrides(SystemParams p, const ParamOptions& o) {
    for (const std::string& s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
        const std::string key = s.substr(0, eq);
        const auto field = find_param_field(key);
        if (!field) throw ConfigError("unknown key '" + key + "'");
        double v = 0.0;
        if (!parse_double(s.substr(eq + 1), v)) {
            throw ConfigError("bad value for '" + key + "': '" + s.substr(eq + 1) + "'");
        }
        p.*(field->member) = v;
    }
    if (o.kappa_wm) p.cavity_decay = *o.kappa_wm * p.mech_freq;
    if (o.g_kappa) p.opa_gain = *o.g_kappa * p.cavity_decay;
    if (o.delta0_wm) p.bare_detuning = *o.delta0_wm * p.mech_freq;
    if (o.p_mw) p.input_power = *o.p_mw * 1e-3;
    if (o.theta_pi) p.opa_phase = *o.theta_pi * std::numbers::pi;
    if (o.chi) p.kerr_coeff = *o.chi;
    if (o.t0_mk) p.bath_temperature = *o.t0_mk * 1e-3;
    if (o.gamma_m) p.mech_damping = *o.gamma_m;
    if (o.gamma_m_hz) p.mech_damping = 2.0 * std::numbers::pi * *o.gamma_m_hz;
    return validated(p);
}

// ---------------------------------------------------------------------------
// point

const char* label_name(int label) {
    switch (label) {
        case 0: return "lower";
        case 1: return "middle";
        default: return "upper";
    }
}

ordered_json maybe(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

ordered_json point_json(const PointAnalysis& pa) {
    const double wm = pa.params.mech_freq;
    ordered_json j;
    ordered_json params = ordered_json::object();
    for (const auto& f : param_fields) params[std::string(f.name)] = pa.params.*(f.member);
    j["params"] = params;
    j["derived"] = {{"g0", pa.derived.g0},
                    {"epsilon", pa.derived.epsilon},
                    {"nbar", pa.derived.nbar},
                    {"beta", pa.derived.beta},
                    {"kerr_threshold", kerr_threshold(pa.params)}};
    if (pa.bounds) {
        j["turning_intensities"] = {{"lower", pa.bounds->lower}, {"upper", pa.bounds->upper}};
    } else {
        j["turning_intensities"] = nullptr;
    }
    j["cooling_limit"] = {{"delta_opt", pa.cooling.delta_opt},
                          {"delta_opt_wm", pa.cooling.delta_opt / wm},
                          {"n_min", pa.cooling.n_min},
                          {"kappa_plus", pa.cooling.kappa_plus}};
    ordered_json branches = ordered_json::array();
    for (const BranchAnalysis& b : pa.branches) {
        ordered_json bj;
        bj["branch_index"] = b.branch.branch_index;
        bj["label"] = label_name(b.label);
        bj["intensity"] = b.branch.intensity;
        bj["displacement"] = b.branch.displacement;
        bj["delta_eff"] = b.branch.delta_eff;
        bj["delta_eff_wm"] = b.branch.delta_eff / wm;
        bj["delta1"] = b.branch.delta1;
        bj["g1"] = b.sys.g1;
        bj["g1_wm"] = b.sys.g1 / wm;
        if (b.stability) {
            const StabilityReport& s = *b.stability;
            ordered_json ev = ordered_json::array();
            for (const Complex& z : s.eigenvalues) ev.push_back({z.real(), z.imag()});
            bj["stability"] = {{"stable", s.stable},
                               {"max_real_eigenvalue", s.max_real},
                               {"margin", s.margin},
                               {"eigenvalues", ev},
                               {"s1", s.rh.s1},
                               {"s2", s.rh.s2},
                               {"s3", s.rh.s3},
                               {"eta1", maybe(s.eta1)},
                               {"eta2", maybe(s.eta2)},
                               {"rh_stable", s.rh_stable},
                               {"rh_disagreement", s.disagreement}};
        } else {
            bj["stability"] = nullptr;
        }
        if (b.observables) {
            const Observables& o = *b.observables;
            bj["observables"] = {{"n_eff", o.n_eff},
                                 {"t_eff", o.t_eff},
                                 {"ground_state", o.ground_state},
                                 {"e_n", o.e_n},
                                 {"photon_fluct", o.photon_fluct},
                                 {"linearization_ratio", o.linearization_ratio},
                                 {"lyapunov_residual", o.lyapunov_residual},
                                 {"min_symplectic", o.min_symplectic}};
        } else {
            bj["observables"] = nullptr;
        }
        bj["analytic"] = {{"n_eff_approx", maybe(b.n_eff_approx)},
                          {"v11_approx", b.variances_approx ? ordered_json(b.variances_approx->v11) : nullptr},
                          {"v22_approx", b.variances_approx ? ordered_json(b.variances_approx->v22) : nullptr},
                          {"valid", b.validity.valid()}};
        bj["linearization_suspect"] = b.linearization_suspect;
        bj["error"] = b.error;
        branches.push_back(bj);
    }
    j["branches"] = branches;
    return j;
}

void print_point_text(std::ostream& out, const PointAnalysis& pa) {
    const double wm = pa.params.mech_freq;
    std::ostringstream s;
    s << std::setprecision(6);
    s << "g0 = " << pa.derived.g0 << " rad/s, epsilon = " << pa.derived.epsilon
      << " rad/s, nbar = " << pa.derived.nbar << ", beta = " << pa.derived.beta << " 1/s\n";
    if (pa.bounds) {
        s << "turning intensities: " << pa.bounds->lower << " .. " << pa.bounds->upper << "\n";
    } else {
        s << "turning intensities: none\n";
    }
    s << "cooling limit: delta_opt = " << pa.cooling.delta_opt / wm
      << " omega_m, n_min = " << pa.cooling.n_min << "\n";
    s << pa.branches.size() << (pa.branches.size() == 1 ? " branch\n" : " branches\n");
    for (const BranchAnalysis& b : pa.branches) {
        s << "\n[" << b.branch.branch_index << "] " << label_name(b.label)
          << "  I = " << b.branch.intensity << "  Delta = " << b.branch.delta_eff / wm
          << " omega_m  g1 = " << b.sys.g1 / wm << " omega_m\n";
        if (b.stability) {
            const StabilityReport& st = *b.stability;
            s << "    " << (st.stable ? "stable" : "UNSTABLE")
              << "  max Re(lambda) = " << st.max_real << "  s1 = " << st.rh.s1
              << "  s2 = " << st.rh.s2 << "  s3 = " << st.rh.s3 << "\n";
            s << "    eta1 = " << (st.eta1 ? format_double(*st.eta1) : "undefined")
              << "  eta2 = " << (st.eta2 ? format_double(*st.eta2) : "undefined");
            if (st.disagreement) s << "  [Routh-Hurwitz disagrees]";
            s << "\n";
        }
        if (b.observables) {
            const Observables& o = *b.observables;
            s << "    n_eff = " << o.n_eff << "  T_eff = " << o.t_eff * 1e3 << " mK"
              << (o.ground_state ? " (ground state)" : "") << "  E_N = " << o.e_n << "\n";
            s << "    photon fluctuation = " << o.photon_fluct
              << "  linearization ratio = " << o.linearization_ratio
              << (b.linearization_suspect ? "  [outside linear regime]" : "") << "\n";
        }
        if (b.n_eff_approx) {
            s << "    analytic n_eff = " << *b.n_eff_approx
              << (b.validity.valid() ? "" : "  (outside validity regime)") << "\n";
        }
        if (!b.error.empty()) s << "    error: " << b.error << "\n";
    }
    out << s.str();
}

// ---------------------------------------------------------------------------
// sweep

struct AxisAlias {
    std::string_view name;
    std::string_view parameter;
};

constexpr AxisAlias axis_aliases[] = {
    {"delta_wm", "effective_detuning"}, {"delta0_wm", "bare_detuning"},
    {"p_mw", "input_power"},            {"theta_pi", "opa_phase"},
    {"g_kappa", "opa_gain"},            {"t0_mk", "bath_temperature"},
};

double alias_scale(std::string_view alias, const SystemParams& p) {
    if (alias == "delta_wm" || alias == "delta0_wm") return p.mech_freq;
    if (alias == "p_mw" || alias == "t0_mk") return 1e-3;
    if (alias == "theta_pi") return std::numbers::pi;
    if (alias == "g_kappa") return p.cavity_decay;
    return 1.0;
}

Axis parse_axis(const std::string& text, const SystemParams& p) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4) throw ConfigError("--axis expects name:min:max:count, got '" + text + "'");
    double lo = 0.0, hi = 0.0, count = 0.0;
    if (!parse_double(parts[1], lo) || !parse_double(parts[2], hi) || !parse_double(parts[3], count) ||
        count < 0.0 || count != std::floor(count)) {
        throw ConfigError("--axis '" + text + "': bad min, max or count");
    }
    std::string name = parts[0];
    double scale = 1.0;
    for (const AxisAlias& a : axis_aliases) {
        if (name == a.name) {
            scale = alias_scale(a.name, p);
            name = std::string(a.parameter);
        }
    }
    return Axis::linear(name, lo * scale, hi * scale, static_cast<std::size_t>(count));
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct SweepOptions {
    ParamOptions params;
    std::string preset;
    std::vector<std::string> axes;
    std::optional<double> delta_wm;
    std::size_t points = default_axis_points;
    std::string format = "csv";
    std::string out = "-";
    int jobs = 0;
    bool gnuplot_header = false;
    std::string branch_policy = "all";
    std::string columns;
    bool analytic = false;
};

FigurePreset resolve_sweep(const SweepOptions& o) {
    const bool have_preset = !o.preset.empty();
    if (have_preset == !o.axes.empty()) throw ConfigError("give either --preset or --axis");
    if (o.branch_policy != "all" && o.branch_policy != "continuity") {
        throw ConfigError("--branch-policy must be all or continuity");
    }
    FigurePreset f;
    if (have_preset) {
        f = figure_preset(o.preset, o.points);
        // axis values stay in SI, so they do not follow an overridden omega_m or kappa
        for (auto& c : f.curves) c.spec.base = apply_overrides(c.spec.base, o.params);
        if (o.branch_policy == "continuity") {
            for (auto& c : f.curves) c.spec.branch_policy = BranchPolicy::continuity;
        }
    } else {
        const SystemParams base = apply_overrides(base_params(o.params), o.params);
        SweepSpec s;
        s.base = base;
        for (const auto& a : o.axes) s.axes.push_back(parse_axis(a, base));
        if (o.delta_wm) s.fixed_effective_detuning = *o.delta_wm * base.mech_freq;
        s.branch_policy = o.branch_policy == "all" ? BranchPolicy::all : BranchPolicy::continuity;
        s.label = "custom";
        f.id = "custom";
        f.description = "custom sweep";
        f.curves.push_back({"custom", s});
    }
    for (const auto& c : f.curves) validate_spec(c.spec);
    return f;
}

Table run_preset(const FigurePreset& f, const SweepOptions& o) {
    switch (f.kind) {
        case PresetKind::maximize: {
            std::vector<Table1Row> rows;
            for (const auto& c : f.curves) {
                const Axis& a = c.spec.axes.front();
                rows.push_back({c.label, validated(c.spec.base),
                                maximize_entanglement(c.spec.base, a.values.front(), a.values.back(),
                                                      a.values.size())});
            }
            return table1_table(rows);
        }
        case PresetKind::hysteresis: {
            std::vector<CurveTrace> traces;
            for (const auto& c : f.curves) traces.push_back({c.label, hysteresis_trace(c.spec, o.jobs)});
            return hysteresis_table(traces);
        }
        case PresetKind::sweep: break;
    }
    std::vector<CurveRecords> curves;
    for (const auto& c : f.curves) {
        std::vector<std::string> names;
        for (const Axis& a : c.spec.axes) names.push_back(a.parameter);
        curves.push_back({c.label, names, c.spec.base.mech_freq, run_sweep(c.spec, o.jobs)});
    }
    return sweep_table(curves, o.analytic);
}

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
    if (o.format != "csv" && o.format != "json") throw ConfigError("--format must be csv or json");
    const FigurePreset f = resolve_sweep(o);
    Table table = run_preset(f, o);
    if (!o.columns.empty()) table = select_columns(table, split_list(o.columns));

    auto writer = [&](std::ostream& os) {
        if (o.format == "csv") {
            write_csv(os, table, o.gnuplot_header);
        } else {
            write_jsonl(os, table);
        }
    };
    if (o.out == "-") {
        writer(out);
        return exit_ok;
    }
    const std::filesystem::path path(o.out);
    write_file_atomic(path, writer);
    std::filesystem::path meta = path;
    meta += ".meta.json";
    try {
        const std::string source = o.preset.empty() ? "custom" : "preset:" + o.preset;
        const std::string text =
            run_metadata_json(table.schema, source, to_string(f.kind), f.curves, table.rows.size());
        write_file_atomic(meta, [&](std::ostream& os) { os << text << '\n'; });
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw;
    }
    return exit_ok;
}

std::string preset_help() {
    std::string s = "Presets:";
    for (const auto& id : preset_ids()) s += " " + id;
    return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Steady state, stability, cooling and entanglement of a Kerr + OPA optomechanical cavity",
                 "optokerr"};
    app.footer(preset_help() + "\nExit codes: 0 ok, 2 configuration error, 3 numerical failure.");
    app.require_subcommand(1);

    ParamOptions point_opts;
    std::optional<double> point_delta_wm;
    std::string point_format = "text";
    auto* point = app.add_subcommand("point", "analyze every steady state of one parameter set");
    add_param_options(point, point_opts, true);
    point->add_option("--delta-wm", point_delta_wm,
                      "hold this effective detuning (units of omega_m) and solve for the bare one");
    point->add_option("--format", point_format, "text or json");

    SweepOptions sw;
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep or a named figure preset");
    add_param_options(sweep, sw.params, true);
    sweep->add_option("--preset", sw.preset, preset_help());
    sweep->add_option("--axis", sw.axes,
                      "name:min:max:count in SI units (aliases delta_wm, delta0_wm, p_mw, "
                      "theta_pi, g_kappa, t0_mk use figure units); at most two");
    sweep->add_option("--delta-wm", sw.delta_wm, "hold the effective detuning (units of omega_m)");
    sweep->add_option("--points", sw.points, "points per preset axis");
    sweep->add_option("--format", sw.format, "csv or json");
    sweep->add_option("--out", sw.out, "output path, '-' for stdout");
    sweep->add_option("--jobs", sw.jobs, "worker threads, 0 = OpenMP default, 1 = serial");
    sweep->add_flag("--gnuplot-header", sw.gnuplot_header, "add a column-index comment line");
    sweep->add_option("--branch-policy", sw.branch_policy, "all or continuity");
    sweep->add_option("--columns", sw.columns, "comma-separated output columns");
    sweep->add_flag("--analytic", sw.analytic, "add the closed-form occupancy columns");

    auto* presets = app.add_subcommand("presets", "list the figure presets");
    int check_jobs = 0;
    auto* check = app.add_subcommand("check", "run the built-in invariant checks");
    check->add_option("--jobs", check_jobs, "threads for the parallel-equivalence check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config_error;
    }

    try {
        if (*point) {
            if (point_format != "text" && point_format != "json") {
                throw ConfigError("--format must be text or json");
            }
            const SystemParams p = apply_overrides(base_params(point_opts), point_opts);
            const PointAnalysis pa = point_delta_wm
                                         ? analyze_at_effective_detuning(p, *point_delta_wm * p.mech_freq)
                                         : analyze_point(p);
            if (point_format == "json") {
                out << point_json(pa).dump(2) << '\n';
            } else {
                print_point_text(out, pa);
            }
            return exit_ok;
        }
        if (*sweep) return cmd_sweep(sw, out);
        if (*presets) {
            for (const auto& id : preset_ids()) {
                const FigurePreset f = figure_preset(id, 2);
                out << std::left << std::setw(8) << id << std::setw(12) << to_string(f.kind)
                    << f.description << '\n';
            }
            return exit_ok;
        }
        if (*check) {
            bool ok = true;
            for (const CheckResult& r : run_self_checks(check_jobs)) {
                out << (r.passed ? "PASS " : "FAIL ") << r.name;
                if (!r.passed) out << ": " << r.detail;
                out << '\n';
                ok = ok && r.passed;
            }
            return ok ? exit_ok : exit_numerical_error;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical_error;
    }
    return exit_ok;
}

}  // namespace optokerr
