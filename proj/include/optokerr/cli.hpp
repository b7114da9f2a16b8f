#pragma once

#include <iosfwd>

namespace optokerr {

// Exit codes: 0 success, 2 configuration or usage error, 3 numerical failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numerical_error = 3;

// Environment variable naming a default config file.
inline constexpr const char* config_env_var = "OPTOKERR_CONFIG";

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace optokerr
