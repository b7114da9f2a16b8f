#pragma once

#include "optokerr/params.hpp"

#include <optional>
#include <vector>

namespace optokerr {

// One real non-negative root of the intensity cubic and the quantities that
// follow from it. The amplitude is taken real and non-negative.
struct SteadyStateBranch {
    double intensity = 0.0;     // photon number a_s^2
    double amplitude = 0.0;     // a_s
    double displacement = 0.0;  // q_s = (g0 / omega_m) I
    double delta_eff = 0.0;     // Delta = Delta0 + beta I
    double delta1 = 0.0;        // Delta + 2 chi I
    double kappa_minus = 0.0;   // kappa - 2G cos(theta)
    double kappa_plus = 0.0;    // kappa + 2G cos(theta)
    int branch_index = 0;       // ordinal among the roots, 0 = lowest intensity
};

// beta^2 I^3 + 2 A beta I^2 + (A^2 + kappa_-^2) I - epsilon^2,
// A = Delta0 - 2G sin(theta).
struct CubicCoefficients {
    double c3 = 0.0;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;

    double operator()(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
};

CubicCoefficients intensity_cubic(const SystemParams& params, const DerivedParams& derived);

// Ascending in intensity. Throws NoPhysicalRoot if no root is >= 0.
std::vector<SteadyStateBranch> solve_branches(const SystemParams& params,
                                              const DerivedParams& derived);
std::vector<SteadyStateBranch> solve_branches(const SystemParams& params);

SteadyStateBranch make_branch(const SystemParams& params, const DerivedParams& derived,
                              double intensity, int branch_index);

// |I [(Delta - 2G sin)^2 + kappa_-^2] - epsilon^2| / epsilon^2 (absolute when epsilon = 0).
double self_consistency_residual(const SystemParams& params, const DerivedParams& derived,
                                 const SteadyStateBranch& branch);

// Intensities at which the input power, as a function of intensity, has its
// local extrema. Empty when beta = 0 or the detuning condition fails.
struct TurningIntensities {
    double lower = 0.0;
    double upper = 0.0;
};

std::optional<TurningIntensities> multistability_bounds(const SystemParams& params,
                                                        const DerivedParams& derived);
std::optional<TurningIntensities> multistability_bounds(const SystemParams& params);

// 0 below the lower turning intensity, 1 between, 2 above the upper one.
// Always 0 when the system has no turning points.
int physical_branch_label(const std::optional<TurningIntensities>& bounds, double intensity);

// The steady state that has a prescribed effective detuning. The intensity
// follows in closed form and the bare detuning is recovered from it.
struct FixedDetuningSolution {
    SteadyStateBranch branch;
    double bare_detuning = 0.0;
};

FixedDetuningSolution branch_at_effective_detuning(const SystemParams& params,
                                                   const DerivedParams& derived,
                                                   double delta_eff);

}  // namespace optokerr
