#pragma once

#include "optokerr/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace testing_support {

inline constexpr double pi = std::numbers::pi;

// Baseline device with kappa in units of omega_m, G in units of kappa,
// theta in units of pi and P in mW.
inline optokerr::SystemParams device(double kappa_wm, double g_kappa, double theta_pi, double chi,
                                     double p_mw) {
    optokerr::SystemParams p;
    p.cavity_decay = kappa_wm * p.mech_freq;
    p.opa_gain = g_kappa * p.cavity_decay;
    p.opa_phase = theta_pi * pi;
    p.kerr_coeff = chi;
    p.input_power = p_mw * 1e-3;
    return p;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testing_support
