#pragma once

#include "optokerr/analysis.hpp"
#include "optokerr/params.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace optokerr {

// Axis parameter names are the SystemParams field names plus this one, which
// sweeps the effective detuning (each point solves for its bare detuning).
inline constexpr std::string_view effective_detuning_axis = "effective_detuning";

inline constexpr std::size_t default_axis_points = 400;

struct Axis {
    std::string parameter;
    std::vector<double> values;

    static Axis linear(std::string parameter, double min, double max,
                       std::size_t count = default_axis_points);
};

enum class BranchPolicy { all, continuity };

struct SweepSpec {
    SystemParams base;
    std::vector<Axis> axes;  // 1 or 2, the last one varies fastest
    std::optional<double> fixed_effective_detuning;
    BranchPolicy branch_policy = BranchPolicy::all;
    std::string label;
};

// Throws ConfigError.
void validate_spec(const SweepSpec& spec);

struct SweepRecord {
    std::size_t point_index = 0;
    std::vector<double> axis_values;
    int branch_index = -1;  // -1 when the point failed before any branch existed
    int branch_label = 0;
    int branch_count = 0;
    double bare_detuning = 0.0;
    double intensity = 0.0;
    double delta_eff = 0.0;
    double g1 = 0.0;
    std::optional<double> eta1;
    std::optional<double> eta2;
    bool stable = false;
    double max_real_eigenvalue = 0.0;
    std::optional<double> n_eff;
    std::optional<double> t_eff;
    bool ground_state = false;
    std::optional<double> e_n;
    std::optional<double> photon_fluct;
    std::optional<double> linearization_ratio;
    std::optional<double> lyapunov_residual;
    std::optional<double> min_symplectic;
    std::optional<double> n_eff_approx;
    bool rh_disagreement = false;
    bool linearization_suspect = false;
    bool analytic_valid = false;
    std::string error;
};

std::size_t grid_size(const SweepSpec& spec);
// Parameters of grid point `index` (row-major) and the effective detuning to
// hold fixed there, if any.
SystemParams point_params(const SweepSpec& spec, std::size_t index,
                          std::optional<double>& delta_eff);

// Records of one grid point, ascending in branch index. Never throws for
// numerical trouble; failures end up in SweepRecord::error.
std::vector<SweepRecord> evaluate_point(const SweepSpec& spec, std::size_t index);

// Reference implementation: one point after another.
std::vector<SweepRecord> run_sweep_serial(const SweepSpec& spec);
// OpenMP over grid points; output is bit-identical to the serial version.
// jobs = 0 uses the OpenMP default.
std::vector<SweepRecord> run_sweep_parallel(const SweepSpec& spec, int jobs = 0);
// Serial when jobs == 1, parallel otherwise.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, int jobs = 0);

// Keep, per row of the innermost axis, only the branch followed by
// continuity from the lowest one. Used for BranchPolicy::continuity.
std::vector<SweepRecord> follow_branch(const std::vector<SweepRecord>& records,
                                       std::size_t inner_count);

struct TracePoint {
    double input_power = 0.0;
    double intensity = 0.0;
    int branch_label = 0;
    int branch_index = 0;
    bool stable = false;
    bool jump = false;  // the followed branch vanished before this point
};

struct HysteresisTrace {
    std::vector<TracePoint> up;    // ascending power, starts on the lowest branch
    std::vector<TracePoint> down;  // descending power, starts on the highest branch
    std::vector<double> up_jumps;
    std::vector<double> down_jumps;
};

// Requires a single input_power axis.
HysteresisTrace hysteresis_trace(const SweepSpec& spec, int jobs = 0);

struct EntanglementMaximum {
    double effective_detuning = 0.0;
    SweepRecord record;
    bool found = false;  // false when no stable entangled point was scanned
};

// Coarse scan of the effective detuning over [lo, hi], then golden-section
// refinement around the best stable grid point.
EntanglementMaximum maximize_entanglement(const SystemParams& base, double lo, double hi,
                                          std::size_t coarse_points = default_axis_points);

}  // namespace optokerr
