#include "optokerr/analytic.hpp"

#include "optokerr/errors.hpp"

#include <cmath>

namespace optokerr {

ApproxVariances variances_approx(double x, double kappa_plus, double w, double eta1) {
    if (!(x > 0.0)) {
        throw NumericalError(NumericalFailure::DomainError, "Delta1 + Gamma_i <= 0");
    }
    if (!(eta1 > 0.0 && eta1 <= 1.0)) {
        throw NumericalError(NumericalFailure::DomainError, "eta1 outside (0, 1]");
    }
    const double common = x * x + kappa_plus * kappa_plus;
    return {(eta1 * w * w + common) / (4.0 * eta1 * w * x), (w * w + common) / (4.0 * w * x)};
}

ApproxVariances variances_approx(const LinearizedSystem& sys) {
    const StabilityParameters eta = stability_parameters(sys);
    return variances_approx(sys.sideband_detuning(), sys.kappa + sys.gamma_r, sys.omega_m,
                            eta.eta1);
}

double sideband_occupancy(double x, double kappa_plus, double w) {
    if (!(x > 0.0)) {
        throw NumericalError(NumericalFailure::DomainError, "Delta1 + Gamma_i <= 0");
    }
    const double off = x - w;
    return (off * off + kappa_plus * kappa_plus) / (4.0 * w * x);
}

double n_eff_approx(const LinearizedSystem& sys) {
    return sideband_occupancy(sys.sideband_detuning(), sys.kappa + sys.gamma_r, sys.omega_m);
}

double minimum_occupancy(double kappa_plus, double w) {
    const double root = std::hypot(w, kappa_plus);
    return kappa_plus * kappa_plus / (2.0 * w * (root + w));
}

CoolingLimit cooling_limit(const SystemParams& p) {
    CoolingLimit c;
    c.kappa_plus = p.cavity_decay + 2.0 * p.opa_gain * std::cos(p.opa_phase);
    c.delta_opt = -2.0 * p.opa_gain * std::sin(p.opa_phase) + std::hypot(p.mech_freq, c.kappa_plus);
    c.n_min = minimum_occupancy(c.kappa_plus, p.mech_freq);
    return c;
}

AnalyticValidity analytic_validity(const LinearizedSystem& sys, double nbar) {
    AnalyticValidity v;
    v.positive_detuning = sys.sideband_detuning() > 0.0;
    const RouthHurwitz rh = routh_hurwitz(sys);
    if (rh.s1 != 0.0) {
        const double eta1 = rh.s2 / (sys.omega_m * rh.s1);
        v.eta1_in_range = eta1 > 0.0 && eta1 <= 1.0;
        v.eta1_near_one = eta1 > 0.99 && eta1 <= 1.0;
    }
    v.high_q = sys.omega_m > 1e3 * sys.gamma_m;
    v.fast_cavity = sys.kappa > 1e2 * nbar * sys.gamma_m;
    return v;
}

}  // namespace optokerr
