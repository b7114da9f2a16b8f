#pragma once

#include "optokerr/analytic.hpp"
#include "optokerr/covariance.hpp"
#include "optokerr/dynamics.hpp"
#include "optokerr/params.hpp"
#include "optokerr/steady_state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace optokerr {

// Points whose photon fluctuation exceeds this fraction of the mean photon
// number are outside the linearized regime.
inline constexpr double linearization_suspect_ratio = 1e-2;

// Everything computed for one steady-state branch. Observables are present
// only for stable branches; any numerical failure on the way is kept in
// `error` instead of being thrown.
struct BranchAnalysis {
    SteadyStateBranch branch;
    int label = 0;  // 0 lower, 1 middle, 2 upper (see physical_branch_label)
    LinearizedSystem sys;
    std::optional<StabilityReport> stability;
    std::optional<Observables> observables;
    std::optional<double> n_eff_approx;
    std::optional<ApproxVariances> variances_approx;
    AnalyticValidity validity;
    bool linearization_suspect = false;
    std::string error;
};

struct PointAnalysis {
    SystemParams params;  // bare detuning is the solved one for fixed-detuning points
    DerivedParams derived;
    std::optional<TurningIntensities> bounds;
    CoolingLimit cooling;
    std::vector<BranchAnalysis> branches;
};

BranchAnalysis analyze_branch(const SystemParams& params, const DerivedParams& derived,
                              const SteadyStateBranch& branch,
                              const std::optional<TurningIntensities>& bounds);

// All branches at a given bare detuning. Throws NumericalError only when no
// steady state exists at all.
PointAnalysis analyze_point(const SystemParams& params);

// The unique steady state with the given effective detuning.
PointAnalysis analyze_at_effective_detuning(const SystemParams& params, double delta_eff);

}  // namespace optokerr
