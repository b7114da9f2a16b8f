#pragma once

#include "optokerr/numerics.hpp"
#include "optokerr/params.hpp"
#include "optokerr/steady_state.hpp"

#include <array>
#include <optional>

namespace optokerr {

// Linearized fluctuation dynamics around one steady state, quadrature order
// (dq, dp, dx, dy).
struct LinearizedSystem {
    double g1 = 0.0;       // sqrt(2) g0 a_s
    double gamma_r = 0.0;  // 2G cos(theta)
    double gamma_i = 0.0;  // 2G sin(theta) - 2 chi I
    double delta1 = 0.0;
    double kappa = 0.0;
    double omega_m = 0.0;
    double gamma_m = 0.0;
    Mat4 drift;

    double gamma_abs2() const { return gamma_r * gamma_r + gamma_i * gamma_i; }
    // Delta1 + Gamma_i, the detuning seen by the mechanical sideband.
    double sideband_detuning() const { return delta1 + gamma_i; }
};

LinearizedSystem linearize(const SteadyStateBranch& branch, const SystemParams& params,
                           const DerivedParams& derived);
LinearizedSystem linearize(const SteadyStateBranch& branch, const SystemParams& params);

struct RouthHurwitz {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;

    bool all_positive() const { return s1 > 0.0 && s2 > 0.0 && s3 > 0.0; }
};

RouthHurwitz routh_hurwitz(const LinearizedSystem& sys);

struct StabilityParameters {
    double eta1 = 0.0;
    double eta2 = 0.0;
};

// eta2 = s1 / (kappa^2 + Delta1^2), eta1 = s2 / (omega_m s1).
// Throws DegenerateDenominator when either denominator vanishes.
StabilityParameters stability_parameters(const LinearizedSystem& sys);

// Eigenvalues must lie left of -margin for a stable verdict.
double stability_margin(const LinearizedSystem& sys);

struct StabilityReport {
    std::array<Complex, 4> eigenvalues{};
    RouthHurwitz rh;
    std::optional<double> eta1;
    std::optional<double> eta2;
    double max_real = 0.0;
    double margin = 0.0;
    bool stable = false;         // eigenvalue verdict, authoritative
    bool rh_stable = false;      // s1, s2, s3 > 0
    bool rh_conclusive = false;  // every |s_i| clears 1e-6 in units of omega_m
    bool disagreement = false;   // conclusive and the two verdicts differ
};

StabilityReport assess_stability(const LinearizedSystem& sys);

}  // namespace optokerr
