#include "optokerr/cli.hpp"
#include "optokerr/format.hpp"
#include "optokerr/output.hpp"
#include "optokerr/presets.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace optokerr;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "optokerr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("optokerr_test_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t column(const CsvDocument& doc, const std::string& name) {
    const auto it = std::find(doc.columns.begin(), doc.columns.end(), name);
    REQUIRE(it != doc.columns.end());
    return static_cast<std::size_t>(it - doc.columns.begin());
}

}  // namespace

TEST_CASE("point: weakly driven bare cavity") {
    const Run r = run({"point", "--kappa-wm", "0.9", "--p-mw", "1e-6", "--delta0-wm", "1", "--format", "json"});
    REQUIRE(r.code == exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["branches"].size() == 1);
    const auto& b = j["branches"][0];
    CHECK(b["stability"]["stable"] == true);
    CHECK(b["observables"]["e_n"] == 0.0);
    CHECK(j["params"]["opa_gain"] == 0.0);
    CHECK(j["params"]["kerr_coeff"] == 0.0);
}

TEST_CASE("point: inside the multistable window") {
    const Run r = run({"point", "--kappa-wm", "0.9", "--g-kappa", "1", "--theta-pi", "0.57", "--chi", "0.05",
                       "--delta0-wm", "-2.5", "--p-mw", "60", "--format", "json"});
    REQUIRE(r.code == exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["branches"].size() == 3);
    int unstable = 0;
    for (const auto& b : j["branches"]) {
        if (b["stability"]["stable"] == false) {
            ++unstable;
            CHECK(b["observables"].is_null());
        }
    }
    CHECK(unstable >= 1);
    CHECK_FALSE(j["turning_intensities"].is_null());

    const Run text = run({"point", "--kappa-wm", "0.9", "--g-kappa", "1", "--theta-pi", "0.57", "--chi", "0.05",
                          "--delta0-wm", "-2.5", "--p-mw", "60"});
    CHECK(text.code == exit_ok);
    CHECK(text.out.find("3 branches") != std::string::npos);
    CHECK(text.out.find("UNSTABLE") != std::string::npos);
}

TEST_CASE("configuration errors name the problem") {
    const fs::path dir = scratch_dir("config");
    const fs::path cfg = dir / "bad.cfg";
    std::ofstream(cfg) << "cavity_decay = 1e7\nwarp_drive = 3\n";
    Run r = run({"point", "--config", cfg.string()});
    CHECK(r.code == exit_config_error);
    CHECK(r.err.find("warp_drive") != std::string::npos);

    r = run({"point", "--set", "kappa=3"});
    CHECK(r.code == exit_config_error);
    CHECK(r.err.find("kappa") != std::string::npos);

    r = run({"point", "--set", "input_power=fast"});
    CHECK(r.code == exit_config_error);

    r = run({"point", "--kappa-wm", "-1"});
    CHECK(r.code == exit_config_error);
    CHECK(r.err.find("cavity_decay") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("config file from the environment") {
    const fs::path dir = scratch_dir("env");
    const fs::path cfg = dir / "device.cfg";
    std::ofstream(cfg) << "# custom device\nkerr_coeff = 0.02\ninput_power = 2e-3\n";
    ::setenv(config_env_var, cfg.string().c_str(), 1);
    Run r = run({"point", "--format", "json"});
    ::unsetenv(config_env_var);
    REQUIRE(r.code == exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["params"]["kerr_coeff"] == 0.02);
    CHECK(j["params"]["input_power"] == 2e-3);

    std::ofstream(cfg) << "kerr_coeff = 0.02\nkerr_coeff = 0.03\n";
    ::setenv(config_env_var, cfg.string().c_str(), 1);
    r = run({"point"});
    ::unsetenv(config_env_var);
    CHECK(r.code == exit_config_error);
    CHECK(r.err.find("duplicate key 'kerr_coeff'") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("numerical failures exit with 3") {
    const Run r = run({"point", "--delta-wm", "0", "--g-kappa", "0.5", "--theta-pi", "0"});
    CHECK(r.code == exit_numerical_error);
    CHECK(r.err.find("DegenerateDenominator") != std::string::npos);
}

TEST_CASE("sweep: cooling preset through files") {
    const fs::path dir = scratch_dir("fig4");
    const fs::path out = dir / "fig4.csv";
    const Run r = run({"sweep", "--preset", "fig4", "--points", "199", "--out", out.string(), "--jobs", "4"});
    REQUIRE(r.code == exit_ok);
    REQUIRE(fs::exists(out));
    REQUIRE(fs::exists(dir / "fig4.csv.meta.json"));
    std::ifstream in(out);
    const CsvDocument doc = read_csv(in);
    CHECK(doc.schema == sweep_schema);
    const std::size_t curve = column(doc, "curve"), t = column(doc, "t_eff"), delta = column(doc, "effective_detuning");

    // the file's minimum temperature is the one the library computes directly
    double best = INFINITY, arg = 0.0;
    for (const auto& row : doc.rows) {
        if (row[curve] != "G/kappa=0.6" || row[t].empty()) continue;
        double v = 0.0, d = 0.0;
        REQUIRE(parse_double(row[t], v));
        REQUIRE(parse_double(row[delta], d));
        if (v < best) best = v, arg = d;
    }
    const auto preset = figure_preset("fig4", 199);
    const SweepSpec& spec = preset.curves.at(1).spec;
    REQUIRE(preset.curves.at(1).label == "G/kappa=0.6");
    double lib_best = INFINITY;
    for (const auto& rec : run_sweep(spec, 1))
        if (rec.t_eff) lib_best = std::min(lib_best, *rec.t_eff);
    CHECK(best == lib_best);
    CHECK(best > 0.14e-3 / 3.0);
    CHECK(best < 0.14e-3 * 3.0);
    CHECK(std::abs(arg / spec.base.mech_freq - 0.8) < 0.1);

    const auto meta = nlohmann::json::parse(std::ifstream(dir / "fig4.csv.meta.json"));
    CHECK(meta["schema"] == std::string(sweep_schema));
    CHECK(meta["curves"].size() == 3);
    CHECK(meta["rows"] == doc.rows.size());
    fs::remove_all(dir);
}

TEST_CASE("sweep: entangling table as JSON") {
    const Run r = run({"sweep", "--preset", "table1", "--points", "100", "--format", "json"});
    REQUIRE(r.code == exit_ok);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(nlohmann::json::parse(line)["schema"] == std::string(table1_schema));
    int records = 0;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        for (const char* key : {"e_n", "delta_wm", "eta1", "eta2", "g1_wm"}) CHECK(j[key].is_number());
        CHECK(j["found"] == true);
        ++records;
    }
    CHECK(records == 4);
}

TEST_CASE("sweep: ad hoc axes") {
    Run r = run({"sweep", "--axis", "p_mw:1:5:3", "--delta-wm", "0.5", "--g-kappa", "0.6", "--kappa-wm", "0.3",
                 "--columns", "input_power,delta_eff_wm,stable"});
    REQUIRE(r.code == exit_ok);
    std::istringstream in(r.out);
    const CsvDocument doc = read_csv(in);
    CHECK(doc.columns == std::vector<std::string>{"input_power", "delta_eff_wm", "stable"});
    REQUIRE(doc.rows.size() == 3);
    CHECK(doc.rows[2][0] == "0.0050000000000000001");
    double d = 0.0;
    REQUIRE(parse_double(doc.rows[1][1], d));
    CHECK(std::abs(d - 0.5) < 1e-8);

    r = run({"sweep", "--axis", "p_mw:1:5:1"});
    CHECK(r.code == exit_config_error);
    r = run({"sweep", "--preset", "fig4", "--points", "1"});
    CHECK(r.code == exit_config_error);
    r = run({"sweep", "--axis", "p_mw:1:5"});
    CHECK(r.code == exit_config_error);
    r = run({"sweep", "--axis", "nonsense:1:5:4"});
    CHECK(r.code == exit_config_error);
    r = run({"sweep", "--preset", "fig99"});
    CHECK(r.code == exit_config_error);
    r = run({"sweep", "--axis", "p_mw:1:5:3", "--columns", "intensity,nope"});
    CHECK(r.code == exit_config_error);
    CHECK(r.err.find("nope") != std::string::npos);
}

TEST_CASE("sweep: failed writes leave nothing behind") {
    const fs::path dir = scratch_dir("badout");
    const fs::path out = dir / "no_such_dir" / "x.csv";
    const Run r = run({"sweep", "--preset", "fig7", "--points", "5", "--out", out.string()});
    CHECK(r.code == exit_config_error);
    CHECK_FALSE(fs::exists(dir / "no_such_dir"));
    CHECK(fs::is_empty(dir));
    fs::remove_all(dir);
}

TEST_CASE("sweep: serial and parallel output files are identical") {
    const Run a = run({"sweep", "--preset", "fig9", "--points", "20", "--jobs", "1", "--analytic"});
    const Run b = run({"sweep", "--preset", "fig9", "--points", "20", "--jobs", "4", "--analytic"});
    REQUIRE(a.code == exit_ok);
    CHECK(a.out == b.out);
    const Run g = run({"sweep", "--preset", "fig3", "--points", "20", "--gnuplot-header"});
    REQUIRE(g.code == exit_ok);
    CHECK(g.out.find("\n# 1:curve") != std::string::npos);
}

TEST_CASE("help and preset listing") {
    const Run help = run({"--help"});
    CHECK(help.code == exit_ok);
    const Run sweep_help = run({"sweep", "--help"});
    const Run list = run({"presets"});
    CHECK(list.code == exit_ok);
    for (const auto& id : preset_ids()) {
        CHECK(help.out.find(id) != std::string::npos);
        CHECK(sweep_help.out.find(id) != std::string::npos);
        CHECK(list.out.find(id) != std::string::npos);
    }
    CHECK(run({"frobnicate"}).code == exit_config_error);
    CHECK(run({"point", "--kappa-wm"}).code == exit_config_error);
}

TEST_CASE("self check") {
    const Run r = run({"check", "--jobs", "2"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("FAIL") == std::string::npos);
}
