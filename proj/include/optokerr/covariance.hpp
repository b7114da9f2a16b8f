#pragma once

#include "optokerr/dynamics.hpp"
#include "optokerr/numerics.hpp"
#include "optokerr/params.hpp"
#include "optokerr/steady_state.hpp"

namespace optokerr {

// Diag[0, gamma_m (2 nbar + 1), kappa, kappa].
Mat4 diffusion_matrix(const SystemParams& params, double nbar);
Mat4 diffusion_matrix(const SystemParams& params);

// Solves M V + V M^T = -D through the 16x16 Kronecker-sum system and
// symmetrizes the result. Throws SingularSystem when M has eigenvalues that
// sum to zero (marginal stability).
Mat4 solve_lyapunov(const Mat4& m, const Mat4& d);

// Frobenius norm of M V + V M^T + D.
double lyapunov_residual(const Mat4& m, const Mat4& v, const Mat4& d);

struct SymplecticSpectrum {
    double smaller = 0.0;
    double larger = 0.0;
};

// Symplectic eigenvalues of a two-mode covariance matrix (vacuum = 1/2).
SymplecticSpectrum symplectic_eigenvalues(const Mat4& v);
// Same for the partial transpose (mirror momentum sign flipped).
SymplecticSpectrum partial_transpose_symplectic_eigenvalues(const Mat4& v);
// The partially transposed matrix itself; the flip can be put on either mode.
Mat4 partial_transpose(const Mat4& v, int flipped_row);

struct MechanicalOccupancy {
    double n_eff = 0.0;
    double t_eff = 0.0;         // kelvin, 0 in the ground state
    bool ground_state = false;  // n_eff == 0, the temperature formula is singular
};

// Throws NegativeOccupancy when n_eff < -1e-9.
MechanicalOccupancy mechanical_occupancy(const Mat4& v, double omega_m);
double effective_temperature(double n_eff, double omega_m);

// E_N = max(0, -ln 2 eta_minus). Throws ComplexBranch for unphysical input.
double log_negativity(const Mat4& v);

// <da^dagger da> = (V33 + V44 - 1) / 2.
double photon_fluctuation(const Mat4& v);
// photon_fluctuation / I; 0 when I = 0.
double linearization_ratio(const Mat4& v, const SteadyStateBranch& branch);

struct Observables {
    Mat4 v;
    double n_eff = 0.0;
    double t_eff = 0.0;
    bool ground_state = false;
    double e_n = 0.0;
    double photon_fluct = 0.0;
    double linearization_ratio = 0.0;
    double lyapunov_residual = 0.0;     // relative to ||D||
    double min_symplectic = 0.0;
};

Observables compute_observables(const LinearizedSystem& sys, const SteadyStateBranch& branch,
                                const SystemParams& params, double nbar);

}  // namespace optokerr
