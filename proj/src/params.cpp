#include "optokerr/params.hpp"

#include "optokerr/errors.hpp"
#include "optokerr/format.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>

namespace optokerr {

std::string_view to_string(NumericalFailure kind) {
    switch (kind) {
        case NumericalFailure::AllCoefficientsZero: return "AllCoefficientsZero";
        case NumericalFailure::NoConvergence: return "NoConvergence";
        case NumericalFailure::SingularMatrix: return "SingularMatrix";
        case NumericalFailure::NoPhysicalRoot: return "NoPhysicalRoot";
        case NumericalFailure::DegenerateDenominator: return "DegenerateDenominator";
        case NumericalFailure::SingularSystem: return "SingularSystem";
        case NumericalFailure::NegativeOccupancy: return "NegativeOccupancy";
        case NumericalFailure::ComplexBranch: return "ComplexBranch";
        case NumericalFailure::DomainError: return "DomainError";
    }
    return "UnknownNumericalFailure";
}

std::optional<ParamField> find_param_field(std::string_view name) {
    for (const auto& f : param_fields) {
        if (f.name == name) return f;
    }
    return std::nullopt;
}

double reduce_phase(double theta) {
    double r = std::fmod(theta, constants::two_pi);
    if (r < 0.0) r += constants::two_pi;
    // fmod of a value just below a multiple of 2pi can round up to 2pi itself
    if (r >= constants::two_pi) r = 0.0;
    return r;
}

namespace {

void require(bool ok, std::string_view field, std::string_view rule) {
    if (!ok) throw ConfigError(std::string(field) + " must be " + std::string(rule));
}

}  // namespace

SystemParams validated(SystemParams p) {
    for (const auto& f : param_fields) {
        require(std::isfinite(p.*(f.member)), f.name, "finite");
    }
    require(p.cavity_length > 0.0, "cavity_length", "> 0");
    require(p.laser_wavelength > 0.0, "laser_wavelength", "> 0");
    require(p.mirror_mass > 0.0, "mirror_mass", "> 0");
    require(p.mech_freq > 0.0, "mech_freq", "> 0");
    require(p.cavity_decay > 0.0, "cavity_decay", "> 0");
    require(p.input_power > 0.0, "input_power", "> 0");
    require(p.mech_damping >= 0.0, "mech_damping", ">= 0");
    require(p.bath_temperature >= 0.0, "bath_temperature", ">= 0");
    require(p.opa_gain >= 0.0, "opa_gain", ">= 0");
    require(p.kerr_coeff >= 0.0, "kerr_coeff", ">= 0");
    p.opa_phase = reduce_phase(p.opa_phase);
    return p;
}

double derive_coupling(const SystemParams& p) {
    return p.laser_frequency() / p.cavity_length *
           std::sqrt(constants::hbar / (p.mirror_mass * p.mech_freq));
}

double drive_amplitude(const SystemParams& p) {
    if (p.input_power <= 0.0) return 0.0;
    return std::sqrt(2.0 * p.cavity_decay * p.input_power /
                     (constants::hbar * p.laser_frequency()));
}

double thermal_occupation(double bath_temperature, double mech_freq) {
    if (bath_temperature <= 0.0) return 0.0;
    const double x = constants::hbar * mech_freq / (constants::k_boltzmann * bath_temperature);
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

// Both helpers use g0*g0/omega_m so that chi = kerr_threshold() gives beta == 0
// exactly (halving and doubling are exact in binary floating point).
double kerr_threshold(const SystemParams& p) {
    const double g0 = derive_coupling(p);
    return g0 * g0 / p.mech_freq / 2.0;
}

double intensity_detuning_slope(const SystemParams& p, double g0) {
    return 2.0 * p.kerr_coeff - g0 * g0 / p.mech_freq;
}

DerivedParams derive(const SystemParams& p) {
    DerivedParams d;
    d.g0 = derive_coupling(p);
    d.epsilon = drive_amplitude(p);
    d.nbar = thermal_occupation(p.bath_temperature, p.mech_freq);
    d.beta = intensity_detuning_slope(p, d.g0);
    return d;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

SystemParams parse_config(std::istream& in, const SystemParams& base) {
    SystemParams p = base;
    std::set<std::string, std::less<>> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const auto key = trim(view.substr(0, eq));
        const auto value = trim(view.substr(eq + 1));
        const auto field = find_param_field(key);
        if (!field) {
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                              std::string(key) + "'");
        }
        if (!seen.insert(std::string(key)).second) {
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" +
                              std::string(key) + "'");
        }
        double x = 0.0;
        if (!parse_double(value, x)) {
            throw ConfigError("line " + std::to_string(lineno) + ": bad value for '" +
                              std::string(key) + "': '" + std::string(value) + "'");
        }
        p.*(field->member) = x;
    }
    return validated(p);
}

SystemParams load_config(const std::filesystem::path& path, const SystemParams& base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    return parse_config(in, base);
}

void write_config(std::ostream& out, const SystemParams& p) {
    out << "# optokerr system parameters (rad/s for all rates and frequencies)\n";
    for (const auto& f : param_fields) {
        out << f.name << " = " << format_double(p.*(f.member)) << "  # " << f.unit << '\n';
    }
}

}  // namespace optokerr
