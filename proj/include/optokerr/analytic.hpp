#pragma once

#include "optokerr/dynamics.hpp"
#include "optokerr/params.hpp"

namespace optokerr {

// Leading-order closed forms for omega_m >> gamma_m and kappa >> nbar gamma_m.
// They never replace the Lyapunov result; callers get both.

struct ApproxVariances {
    double v11 = 0.0;
    double v22 = 0.0;
};

// Throws DomainError unless Delta1 + Gamma_i > 0 and 0 < eta1 <= 1.
ApproxVariances variances_approx(const LinearizedSystem& sys);
ApproxVariances variances_approx(double sideband_detuning, double kappa_plus, double omega_m,
                                 double eta1);

// [(x - omega_m)^2 + kappa_+^2] / (4 omega_m x) with x = Delta1 + Gamma_i.
// Throws DomainError when x <= 0.
double sideband_occupancy(double sideband_detuning, double kappa_plus, double omega_m);
double n_eff_approx(const LinearizedSystem& sys);

struct CoolingLimit {
    double delta_opt = 0.0;  // effective detuning minimizing the sideband occupancy
    double n_min = 0.0;
    double kappa_plus = 0.0;
};

CoolingLimit cooling_limit(const SystemParams& params);
// 1/2 (sqrt(omega_m^2 + kappa_+^2) / omega_m - 1), evaluated without cancellation.
double minimum_occupancy(double kappa_plus, double omega_m);

struct AnalyticValidity {
    bool positive_detuning = false;  // Delta1 + Gamma_i > 0
    bool eta1_in_range = false;      // 0 < eta1 <= 1
    bool high_q = false;             // omega_m > 1e3 gamma_m
    bool fast_cavity = false;        // kappa > 1e2 nbar gamma_m
    bool eta1_near_one = false;      // eta1 > 0.99

    bool formulas_defined() const { return positive_detuning && eta1_in_range; }
    bool valid() const { return formulas_defined() && high_q && fast_cavity; }
};

AnalyticValidity analytic_validity(const LinearizedSystem& sys, double nbar);

}  // namespace optokerr
