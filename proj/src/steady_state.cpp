#include "optokerr/steady_state.hpp"

#include "optokerr/errors.hpp"
#include "optokerr/numerics.hpp"

#include <cmath>

namespace optokerr {

namespace {

double kappa_minus(const SystemParams& p) {
    return p.cavity_decay - 2.0 * p.opa_gain * std::cos(p.opa_phase);
}

double gain_sine_term(const SystemParams& p) { return 2.0 * p.opa_gain * std::sin(p.opa_phase); }

}  // namespace

CubicCoefficients intensity_cubic(const SystemParams& p, const DerivedParams& d) {
    const double a = p.bare_detuning - gain_sine_term(p);
    const double km = kappa_minus(p);
    return {d.beta * d.beta, 2.0 * a * d.beta, a * a + km * km, -d.epsilon * d.epsilon};
}

SteadyStateBranch make_branch(const SystemParams& p, const DerivedParams& d, double intensity,
                              int branch_index) {
    SteadyStateBranch b;
    b.intensity = std::max(intensity, 0.0);
    b.amplitude = std::sqrt(b.intensity);
    b.displacement = d.g0 / p.mech_freq * b.intensity;
    b.delta_eff = p.bare_detuning + d.beta * b.intensity;
    b.delta1 = b.delta_eff + 2.0 * p.kerr_coeff * b.intensity;
    const double two_g_cos = 2.0 * p.opa_gain * std::cos(p.opa_phase);
    b.kappa_minus = p.cavity_decay - two_g_cos;
    b.kappa_plus = p.cavity_decay + two_g_cos;
    b.branch_index = branch_index;
    return b;
}

double self_consistency_residual(const SystemParams& p, const DerivedParams& d,
                                 const SteadyStateBranch& b) {
    const double shifted = b.delta_eff - gain_sine_term(p);
    const double lhs = b.intensity * (shifted * shifted + b.kappa_minus * b.kappa_minus);
    const double eps2 = d.epsilon * d.epsilon;
    const double diff = std::abs(lhs - eps2);
    return eps2 > 0.0 ? diff / eps2 : diff;
}

std::vector<SteadyStateBranch> solve_branches(const SystemParams& p, const DerivedParams& d) {
    const CubicCoefficients c = intensity_cubic(p, d);
    const std::vector<double> roots = cubic_real_roots(c.c3, c.c2, c.c1, c.c0);
    std::vector<SteadyStateBranch> out;
    for (double r : roots) {
        if (r < 0.0) continue;
        out.push_back(make_branch(p, d, r, static_cast<int>(out.size())));
    }
    if (out.empty()) {
        throw NumericalError(NumericalFailure::NoPhysicalRoot,
                             "intensity cubic has no non-negative real root");
    }
    return out;
}

std::vector<SteadyStateBranch> solve_branches(const SystemParams& p) {
    return solve_branches(p, derive(p));
}

std::optional<TurningIntensities> multistability_bounds(const SystemParams& p,
                                                        const DerivedParams& d) {
    if (d.beta == 0.0) return std::nullopt;
    const double a = p.bare_detuning - gain_sine_term(p);
    const double km = kappa_minus(p);
    double disc = a * a - 3.0 * km * km;
    // a double turning point computed from rounded inputs may land a few ulps negative
    if (disc < 0.0 && disc >= -1e-12 * (a * a + 3.0 * km * km)) disc = 0.0;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    const double i1 = (-2.0 * a + root) / (3.0 * d.beta);
    const double i2 = (-2.0 * a - root) / (3.0 * d.beta);
    return TurningIntensities{std::min(i1, i2), std::max(i1, i2)};
}

std::optional<TurningIntensities> multistability_bounds(const SystemParams& p) {
    return multistability_bounds(p, derive(p));
}

int physical_branch_label(const std::optional<TurningIntensities>& bounds, double intensity) {
    if (!bounds || bounds->upper <= 0.0) return 0;
    if (intensity < bounds->lower) return 0;
    if (intensity <= bounds->upper) return 1;
    return 2;
}

FixedDetuningSolution branch_at_effective_detuning(const SystemParams& p, const DerivedParams& d,
                                                   double delta_eff) {
    const double shifted = delta_eff - gain_sine_term(p);
    const double km = kappa_minus(p);
    const double denom = shifted * shifted + km * km;
    if (denom <= 0.0) {
        throw NumericalError(NumericalFailure::DegenerateDenominator,
                             "effective detuning sits on the parametric resonance");
    }
    const double intensity = d.epsilon * d.epsilon / denom;
    SystemParams q = p;
    q.bare_detuning = delta_eff - d.beta * intensity;
    return {make_branch(q, d, intensity, 0), q.bare_detuning};
}

}  // namespace optokerr
