#include "optokerr/covariance.hpp"

#include "optokerr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace optokerr {

Mat4 diffusion_matrix(const SystemParams& p, double nbar) {
    return Mat4::diagonal(0.0, p.mech_damping * (2.0 * nbar + 1.0), p.cavity_decay,
                          p.cavity_decay);
}

Mat4 diffusion_matrix(const SystemParams& p) {
    return diffusion_matrix(p, thermal_occupation(p.bath_temperature, p.mech_freq));
}

Mat4 solve_lyapunov(const Mat4& m, const Mat4& d) {
    const double scale = m.max_abs();
    if (scale == 0.0 || !m.is_finite() || !d.is_finite()) {
        throw NumericalError(NumericalFailure::SingularSystem, "drift matrix is zero or non-finite");
    }
    // vec(M V + V M^T) = (I (x) M + M (x) I) vec(V), row-major vec index 4i + j
    SquareMatrix a(16);
    std::vector<double> rhs(16);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const auto row = static_cast<std::size_t>(4 * i + j);
            for (int k = 0; k < 4; ++k) {
                a(row, static_cast<std::size_t>(4 * k + j)) += m(i, k) / scale;
                a(row, static_cast<std::size_t>(4 * i + k)) += m(j, k) / scale;
            }
            rhs[row] = -d(i, j) / scale;
        }
    }
    std::vector<double> x;
    try {
        x = solve_dense(a, rhs);
    } catch (const NumericalError& e) {
        throw NumericalError(NumericalFailure::SingularSystem,
                             std::string("Lyapunov system: ") + e.what());
    }
    Mat4 v;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double vij = x[static_cast<std::size_t>(4 * i + j)];
            const double vji = x[static_cast<std::size_t>(4 * j + i)];
            v(i, j) = 0.5 * (vij + vji);
        }
    if (!v.is_finite()) {
        throw NumericalError(NumericalFailure::SingularSystem, "non-finite covariance");
    }
    return v;
}

double lyapunov_residual(const Mat4& m, const Mat4& v, const Mat4& d) {
    return (m * v + v * m.transposed() + d).frobenius_norm();
}

namespace {

struct Blocks {
    double det_a;
    double det_b;
    double det_c;
    double det_v;
};

Blocks block_determinants(const Mat4& v) {
    return {det2(v(0, 0), v(0, 1), v(1, 0), v(1, 1)), det2(v(2, 2), v(2, 3), v(3, 2), v(3, 3)),
            det2(v(0, 2), v(0, 3), v(1, 2), v(1, 3)), det4(v)};
}

// Roots of x^2 - sigma x + det V; clamped when rounding pushes the
// discriminant slightly negative.
SymplecticSpectrum spectrum_from(double sigma, double det_v) {
    double disc = sigma * sigma - 4.0 * det_v;
    const double tol = 1e-10 * std::max(sigma * sigma, 1e-300);
    if (disc < 0.0) {
        if (disc < -tol) {
            throw NumericalError(NumericalFailure::ComplexBranch,
                                 "Sigma^2 < 4 det V: covariance matrix is unphysical");
        }
        disc = 0.0;
    }
    const double root = std::sqrt(disc);
    const double plus = 0.5 * (sigma + root);
    // the smaller root via the product keeps precision when det V << sigma^2
    const double minus = plus > 0.0 ? det_v / plus : 0.0;
    return {std::sqrt(std::max(minus, 0.0)), std::sqrt(std::max(plus, 0.0))};
}

}  // namespace

SymplecticSpectrum symplectic_eigenvalues(const Mat4& v) {
    const Blocks b = block_determinants(v);
    return spectrum_from(b.det_a + b.det_b + 2.0 * b.det_c, b.det_v);
}

SymplecticSpectrum partial_transpose_symplectic_eigenvalues(const Mat4& v) {
    const Blocks b = block_determinants(v);
    return spectrum_from(b.det_a + b.det_b - 2.0 * b.det_c, b.det_v);
}

Mat4 partial_transpose(const Mat4& v, int flipped_row) {
    Mat4 t = v;
    for (int k = 0; k < 4; ++k) {
        if (k == flipped_row) continue;
        t(flipped_row, k) = -t(flipped_row, k);
        t(k, flipped_row) = -t(k, flipped_row);
    }
    return t;
}

double effective_temperature(double n_eff, double omega_m) {
    if (n_eff <= 0.0) return 0.0;
    return constants::hbar * omega_m / (constants::k_boltzmann * std::log1p(1.0 / n_eff));
}

MechanicalOccupancy mechanical_occupancy(const Mat4& v, double omega_m) {
    const double n = 0.5 * (v(0, 0) + v(1, 1) - 1.0);
    if (n < -1e-9) {
        throw NumericalError(NumericalFailure::NegativeOccupancy,
                             "n_eff = " + std::to_string(n));
    }
    MechanicalOccupancy occ;
    occ.n_eff = std::max(n, 0.0);
    occ.ground_state = occ.n_eff == 0.0;
    occ.t_eff = effective_temperature(occ.n_eff, omega_m);
    return occ;
}

double log_negativity(const Mat4& v) {
    const double eta_minus = partial_transpose_symplectic_eigenvalues(v).smaller;
    if (eta_minus <= 0.0) {
        throw NumericalError(NumericalFailure::ComplexBranch,
                             "vanishing symplectic eigenvalue of the partial transpose");
    }
    return std::max(0.0, -std::log(2.0 * eta_minus));
}

double photon_fluctuation(const Mat4& v) { return 0.5 * (v(2, 2) + v(3, 3) - 1.0); }

double linearization_ratio(const Mat4& v, const SteadyStateBranch& branch) {
    if (branch.intensity <= 0.0) return 0.0;
    return std::max(photon_fluctuation(v), 0.0) / branch.intensity;
}

Observables compute_observables(const LinearizedSystem& sys, const SteadyStateBranch& branch,
                                const SystemParams& params, double nbar) {
    const Mat4 d = diffusion_matrix(params, nbar);
    Observables o;
    o.v = solve_lyapunov(sys.drift, d);
    const double dnorm = d.frobenius_norm();
    const double res = lyapunov_residual(sys.drift, o.v, d);
    o.lyapunov_residual = dnorm > 0.0 ? res / dnorm : res;
    const MechanicalOccupancy occ = mechanical_occupancy(o.v, params.mech_freq);
    o.n_eff = occ.n_eff;
    o.t_eff = occ.t_eff;
    o.ground_state = occ.ground_state;
    o.e_n = log_negativity(o.v);
    o.photon_fluct = photon_fluctuation(o.v);
    o.linearization_ratio = linearization_ratio(o.v, branch);
    o.min_symplectic = symplectic_eigenvalues(o.v).smaller;
    return o;
}

}  // namespace optokerr
