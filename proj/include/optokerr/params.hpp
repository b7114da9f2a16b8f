#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string_view>

namespace optokerr {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_boltzmann = 1.380649e-23;   // J/K
inline constexpr double speed_of_light = 299792458.0; // m/s
inline constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace constants

// Physical inputs in one coherent unit system: rad/s for every frequency and
// rate, SI for everything else. Defaults are the baseline device (1 mm cavity,
// 810 nm drive, 5 ng mirror at 10 MHz, 400 mK bath) with kappa = 0.9 omega_m.
struct SystemParams {
    double cavity_length = 1.0e-3;                      // m
    double laser_wavelength = 810.0e-9;                 // m
    double mirror_mass = 5.0e-12;                       // kg
    double mech_freq = constants::two_pi * 10.0e6;      // rad/s
    double mech_damping = 100.0;                        // rad/s
    double cavity_decay = 0.9 * constants::two_pi * 10.0e6;  // rad/s
    double input_power = 15.0e-3;                       // W
    double bare_detuning = 0.0;                         // rad/s
    double opa_gain = 0.0;                              // rad/s
    double opa_phase = 0.0;                             // rad, in [0, 2pi)
    double kerr_coeff = 0.0;                            // 1/s
    double bath_temperature = 0.4;                      // K

    double laser_frequency() const noexcept {
        return constants::two_pi * constants::speed_of_light / laser_wavelength;
    }

    bool operator==(const SystemParams&) const = default;
};

struct ParamField {
    std::string_view name;
    std::string_view unit;
    double SystemParams::*member;
};

inline constexpr std::array<ParamField, 12> param_fields{{
    {"cavity_length", "m", &SystemParams::cavity_length},
    {"laser_wavelength", "m", &SystemParams::laser_wavelength},
    {"mirror_mass", "kg", &SystemParams::mirror_mass},
    {"mech_freq", "rad/s", &SystemParams::mech_freq},
    {"mech_damping", "rad/s", &SystemParams::mech_damping},
    {"cavity_decay", "rad/s", &SystemParams::cavity_decay},
    {"input_power", "W", &SystemParams::input_power},
    {"bare_detuning", "rad/s", &SystemParams::bare_detuning},
    {"opa_gain", "rad/s", &SystemParams::opa_gain},
    {"opa_phase", "rad", &SystemParams::opa_phase},
    {"kerr_coeff", "1/s", &SystemParams::kerr_coeff},
    {"bath_temperature", "K", &SystemParams::bath_temperature},
}};

std::optional<ParamField> find_param_field(std::string_view name);

// Throws ConfigError on any violated invariant. The returned copy has
// opa_phase reduced to [0, 2pi).
SystemParams validated(SystemParams params);
double reduce_phase(double theta);

struct DerivedParams {
    double g0 = 0.0;       // single-photon coupling, rad/s
    double epsilon = 0.0;  // drive amplitude, rad/s
    double nbar = 0.0;     // thermal phonon occupancy
    double beta = 0.0;     // intensity-detuning slope 2 chi - g0^2/omega_m
};

// g0 = (omega_L / L) sqrt(hbar / (m omega_m)); omega_L stands in for omega_0.
double derive_coupling(const SystemParams& params);
// epsilon = sqrt(2 kappa P / (hbar omega_L)).
double drive_amplitude(const SystemParams& params);
// Bose factor; 0 at T0 = 0 and when the exponent overflows.
double thermal_occupation(double bath_temperature, double mech_freq);
// Kerr coefficient at which beta vanishes: g0^2 / (2 omega_m).
double kerr_threshold(const SystemParams& params);
double intensity_detuning_slope(const SystemParams& params, double g0);

DerivedParams derive(const SystemParams& params);

// key = value format, '#' starts a comment. Keys are the SystemParams field
// names; keys not present keep the value from `base`.
SystemParams parse_config(std::istream& in, const SystemParams& base = SystemParams{});
SystemParams load_config(const std::filesystem::path& path,
                         const SystemParams& base = SystemParams{});
void write_config(std::ostream& out, const SystemParams& params);

}  // namespace optokerr
