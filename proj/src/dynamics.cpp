#include "optokerr/dynamics.hpp"

#include "optokerr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace optokerr {

LinearizedSystem linearize(const SteadyStateBranch& b, const SystemParams& p,
                           const DerivedParams& d) {
    LinearizedSystem s;
    s.g1 = std::numbers::sqrt2 * d.g0 * b.amplitude;
    s.gamma_r = 2.0 * p.opa_gain * std::cos(p.opa_phase);
    s.gamma_i = 2.0 * p.opa_gain * std::sin(p.opa_phase) - 2.0 * p.kerr_coeff * b.intensity;
    s.delta1 = b.delta1;
    s.kappa = p.cavity_decay;
    s.omega_m = p.mech_freq;
    s.gamma_m = p.mech_damping;

    Mat4& m = s.drift;
    m(0, 1) = s.omega_m;
    m(1, 0) = -s.omega_m;
    m(1, 1) = -s.gamma_m;
    m(1, 2) = s.g1;
    m(2, 2) = -s.kappa + s.gamma_r;
    m(2, 3) = s.delta1 + s.gamma_i;
    m(3, 0) = s.g1;
    m(3, 2) = -s.delta1 + s.gamma_i;
    m(3, 3) = -s.kappa - s.gamma_r;
    return s;
}

LinearizedSystem linearize(const SteadyStateBranch& b, const SystemParams& p) {
    return linearize(b, p, derive(p));
}

RouthHurwitz routh_hurwitz(const LinearizedSystem& s) {
    const double k = s.kappa;
    const double wm = s.omega_m;
    const double gm = s.gamma_m;
    const double coupling = s.g1 * s.g1 * s.sideband_detuning();

    RouthHurwitz rh;
    rh.s1 = k * k + s.delta1 * s.delta1 - s.gamma_abs2();
    rh.s2 = wm * rh.s1 - coupling;
    const double shifted = rh.s1 - wm * wm;
    rh.s3 = 2.0 * k * gm * (shifted * shifted + (gm + 2.0 * k) * (gm * rh.s1 + 2.0 * k * wm * wm)) +
            coupling * wm * (2.0 * k + gm) * (2.0 * k + gm);
    return rh;
}

StabilityParameters stability_parameters(const LinearizedSystem& s) {
    const RouthHurwitz rh = routh_hurwitz(s);
    const double bare = s.kappa * s.kappa + s.delta1 * s.delta1;
    if (bare == 0.0) {
        throw NumericalError(NumericalFailure::DegenerateDenominator, "kappa^2 + Delta1^2 = 0");
    }
    if (rh.s1 == 0.0) {
        throw NumericalError(NumericalFailure::DegenerateDenominator,
                             "s1 = 0 (parametric threshold)");
    }
    return {rh.s2 / (s.omega_m * rh.s1), rh.s1 / bare};
}

double stability_margin(const LinearizedSystem& s) {
    const double scale = s.gamma_m > 0.0 ? std::min(s.omega_m, s.gamma_m) : s.omega_m;
    return 1e-6 * scale;
}

StabilityReport assess_stability(const LinearizedSystem& s) {
    StabilityReport r;
    r.eigenvalues = eig4(s.drift);
    r.max_real = r.eigenvalues[0].real();
    for (const Complex& z : r.eigenvalues) r.max_real = std::max(r.max_real, z.real());
    r.margin = stability_margin(s);
    r.stable = r.max_real < -r.margin;

    r.rh = routh_hurwitz(s);
    r.rh_stable = r.rh.all_positive();
    const double w2 = s.omega_m * s.omega_m;
    constexpr double tol = 1e-6;
    r.rh_conclusive = std::abs(r.rh.s1) > tol * w2 && std::abs(r.rh.s2) > tol * w2 * s.omega_m &&
                      std::abs(r.rh.s3) > tol * w2 * w2 * w2;
    r.disagreement = r.rh_conclusive && r.rh_stable != r.stable;

    const double bare = s.kappa * s.kappa + s.delta1 * s.delta1;
    if (bare > 0.0) r.eta2 = r.rh.s1 / bare;
    if (r.rh.s1 != 0.0) r.eta1 = r.rh.s2 / (s.omega_m * r.rh.s1);
    return r;
}

}  // namespace optokerr
