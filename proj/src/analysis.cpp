#include "optokerr/analysis.hpp"

#include "optokerr/errors.hpp"

namespace optokerr {

BranchAnalysis analyze_branch(const SystemParams& p, const DerivedParams& d,
                              const SteadyStateBranch& branch,
                              const std::optional<TurningIntensities>& bounds) {
    BranchAnalysis a;
    a.branch = branch;
    a.label = physical_branch_label(bounds, branch.intensity);
    a.sys = linearize(branch, p, d);
    a.validity = analytic_validity(a.sys, d.nbar);
    try {
        a.stability = assess_stability(a.sys);
        if (a.stability->stable) {
            a.observables = compute_observables(a.sys, branch, p, d.nbar);
            a.linearization_suspect =
                a.observables->linearization_ratio > linearization_suspect_ratio;
        }
    } catch (const NumericalError& e) {
        a.error = e.what();
    }
    if (a.validity.positive_detuning) a.n_eff_approx = n_eff_approx(a.sys);
    if (a.validity.formulas_defined()) a.variances_approx = variances_approx(a.sys);
    return a;
}

PointAnalysis analyze_point(const SystemParams& params) {
    PointAnalysis pa;
    pa.params = validated(params);
    pa.derived = derive(pa.params);
    pa.bounds = multistability_bounds(pa.params, pa.derived);
    pa.cooling = cooling_limit(pa.params);
    for (const SteadyStateBranch& b : solve_branches(pa.params, pa.derived)) {
        pa.branches.push_back(analyze_branch(pa.params, pa.derived, b, pa.bounds));
    }
    return pa;
}

PointAnalysis analyze_at_effective_detuning(const SystemParams& params, double delta_eff) {
    PointAnalysis pa;
    pa.params = validated(params);
    pa.derived = derive(pa.params);
    const FixedDetuningSolution sol = branch_at_effective_detuning(pa.params, pa.derived, delta_eff);
    pa.params.bare_detuning = sol.bare_detuning;
    pa.bounds = multistability_bounds(pa.params, pa.derived);
    pa.cooling = cooling_limit(pa.params);
    pa.branches.push_back(analyze_branch(pa.params, pa.derived, sol.branch, pa.bounds));
    return pa;
}

}  // namespace optokerr
