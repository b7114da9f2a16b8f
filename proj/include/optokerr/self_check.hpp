#pragma once

#include "optokerr/params.hpp"

#include <random>
#include <string>
#include <vector>

namespace optokerr {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Physically sensible random parameters: kappa in [0.1, 1] omega_m,
// G <= 1.5 kappa, any theta, chi <= 0.1, P in [0.1, 20] mW,
// Delta0 in [-3, 3] omega_m, gamma_m in [10, 1e3] rad/s, T0 <= 0.4 K.
SystemParams random_physical_params(std::mt19937_64& rng);

// Fast invariant checks behind the `check` command.
std::vector<CheckResult> run_self_checks(int jobs = 0);

}  // namespace optokerr
