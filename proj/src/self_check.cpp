#include "optokerr/self_check.hpp"

#include "optokerr/analysis.hpp"
#include "optokerr/analytic.hpp"
#include "optokerr/covariance.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/format.hpp"
#include "optokerr/numerics.hpp"
#include "optokerr/output.hpp"
#include "optokerr/steady_state.hpp"
#include "optokerr/sweep.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace optokerr {

SystemParams random_physical_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SystemParams p;
    p.cavity_decay = (0.1 + 0.9 * u(rng)) * p.mech_freq;
    p.opa_gain = 1.5 * u(rng) * p.cavity_decay;
    p.opa_phase = 2.0 * std::numbers::pi * u(rng);
    p.kerr_coeff = 0.1 * u(rng);
    p.input_power = (0.1 + 19.9 * u(rng)) * 1e-3;
    p.bare_detuning = (6.0 * u(rng) - 3.0) * p.mech_freq;
    p.mech_damping = std::pow(10.0, 1.0 + 2.0 * u(rng));
    p.bath_temperature = 0.4 * u(rng);
    return validated(p);
}

namespace {

CheckResult check(std::string name, const std::function<std::string()>& body) {
    CheckResult r{std::move(name), false, {}};
    try {
        r.detail = body();
        r.passed = r.detail.empty();
    } catch (const std::exception& e) {
        r.detail = std::string("threw: ") + e.what();
    }
    return r;
}

std::string cubic_roots() {
    const auto r = cubic_real_roots(1, -6, 11, -6);
    if (r.size() != 3 || std::abs(r[0] - 1) > 1e-12 || std::abs(r[1] - 2) > 1e-12 ||
        std::abs(r[2] - 3) > 1e-12) {
        return "(x-1)(x-2)(x-3) roots wrong";
    }
    const auto q = cubic_real_roots(0, 1, -3, 2);
    if (q.size() != 2 || std::abs(q[0] - 1) > 1e-12 || std::abs(q[1] - 2) > 1e-12) {
        return "quadratic degeneration wrong";
    }
    return {};
}

std::string eigen_trace_det() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        Mat4 m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = u(rng);
        const auto ev = eig4(m);
        Complex sum = 0.0, prod = 1.0;
        for (const Complex& z : ev) {
            sum += z;
            prod *= z;
        }
        const double tr = m.trace();
        const double det = det4(m);
        if (std::abs(sum - tr) > 1e-9 * std::max(1.0, std::abs(tr))) return "eigenvalue sum != trace";
        if (std::abs(prod - det) > 1e-8 * std::max(1.0, std::abs(det))) return "eigenvalue product != det";
    }
    return {};
}

std::string dense_solve() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SquareMatrix a(16);
    std::vector<double> x(16);
    for (std::size_t i = 0; i < 16; ++i) {
        x[i] = u(rng);
        for (std::size_t j = 0; j < 16; ++j) a(i, j) = u(rng) + (i == j ? 8.0 : 0.0);
    }
    const auto b = a.multiply(x);
    const auto y = solve_dense(a, b);
    for (std::size_t i = 0; i < 16; ++i)
        if (std::abs(y[i] - x[i]) > 1e-10) return "16x16 solve lost accuracy";
    return {};
}

std::string kerr_threshold_sign() {
    SystemParams p;
    p.kerr_coeff = kerr_threshold(p);
    if (derive(p).beta != 0.0) return "beta not zero at the Kerr threshold";
    if (multistability_bounds(p)) return "turning points exist at the Kerr threshold";
    return {};
}

std::string random_points(int count) {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < count; ++t) {
        const SystemParams p = random_physical_params(rng);
        const PointAnalysis pa = analyze_point(p);
        for (const BranchAnalysis& b : pa.branches) {
            if (self_consistency_residual(pa.params, pa.derived, b.branch) > 1e-8)
                return "steady state fails self-consistency";
            if (!b.stability) return "stability failed: " + b.error;
            if (b.stability->disagreement) return "Routh-Hurwitz and eigenvalues disagree";
            if (!b.observables) continue;
            if (b.observables->lyapunov_residual > 1e-8) return "Lyapunov residual too large";
            if (b.observables->min_symplectic < 0.5 - 1e-9) return "unphysical covariance";
        }
    }
    return {};
}

std::string cooling_identity() {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 200; ++t) {
        const SystemParams p = random_physical_params(rng);
        const CoolingLimit c = cooling_limit(p);
        if (c.kappa_plus == 0.0) continue;
        const double x = c.delta_opt + 2.0 * p.opa_gain * std::sin(p.opa_phase);
        const double n = sideband_occupancy(x, c.kappa_plus, p.mech_freq);
        if (std::abs(n - c.n_min) > 1e-12 * c.n_min) return "sideband occupancy at delta_opt != n_min";
    }
    return {};
}

std::string fixed_detuning() {
    SystemParams p;
    p.cavity_decay = 0.3 * p.mech_freq;
    p.opa_gain = p.cavity_decay;
    p.opa_phase = 0.67 * std::numbers::pi;
    p.kerr_coeff = 0.05;
    p.input_power = 6e-3;
    const DerivedParams d = derive(p);
    for (double k : {0.1, 0.5, 1.0, 1.7}) {
        const auto sol = branch_at_effective_detuning(p, d, k * p.mech_freq);
        if (std::abs(sol.branch.delta_eff - k * p.mech_freq) > 1e-8 * p.mech_freq)
            return "effective detuning not reproduced";
    }
    return {};
}

std::string parallel_equivalence(int jobs) {
    SweepSpec s;
    s.base.cavity_decay = 0.3 * s.base.mech_freq;
    s.base.opa_gain = 1.3 * s.base.cavity_decay;
    s.base.opa_phase = 0.67 * std::numbers::pi;
    s.base.kerr_coeff = 0.05;
    s.axes.push_back(Axis::linear("input_power", 0.5e-3, 8e-3, 24));
    s.axes.push_back(Axis::linear(std::string(effective_detuning_axis), 0.05 * s.base.mech_freq,
                                  1.5 * s.base.mech_freq, 24));
    std::ostringstream a, b;
    write_csv(a, sweep_table({{"s", {"input_power", "effective_detuning"}, s.base.mech_freq,
                               run_sweep_serial(s)}},
                             true));
    write_csv(b, sweep_table({{"s", {"input_power", "effective_detuning"}, s.base.mech_freq,
                               run_sweep_parallel(s, jobs > 0 ? jobs : 4)}},
                             true));
    if (a.str() != b.str()) return "serial and parallel sweeps differ";
    return {};
}

std::string csv_round_trip() {
    SweepSpec s;
    s.axes.push_back(Axis::linear("input_power", 1e-3, 20e-3, 16));
    const auto records = run_sweep_serial(s);
    std::stringstream io;
    write_csv(io, sweep_table({{"rt", {"input_power"}, s.base.mech_freq, records}}, false));
    const CsvDocument doc = read_csv(io);
    std::size_t col = 0;
    while (col < doc.columns.size() && doc.columns[col] != "intensity") ++col;
    if (col == doc.columns.size() || doc.rows.size() != records.size()) return "CSV shape changed";
    for (std::size_t i = 0; i < records.size(); ++i) {
        double v = 0.0;
        if (!parse_double(doc.rows[i][col], v) || v != records[i].intensity)
            return "CSV intensity not reproduced exactly";
    }
    return {};
}

}  // namespace

std::vector<CheckResult> run_self_checks(int jobs) {
    std::vector<CheckResult> out;
    out.push_back(check("cubic roots", cubic_roots));
    out.push_back(check("eig4 trace and determinant", eigen_trace_det));
    out.push_back(check("16x16 dense solve", dense_solve));
    out.push_back(check("Kerr threshold removes multistability", kerr_threshold_sign));
    out.push_back(check("random points: steady state, stability, covariance",
                        [] { return random_points(300); }));
    out.push_back(check("cooling limit identity", cooling_identity));
    out.push_back(check("fixed effective detuning", fixed_detuning));
    out.push_back(check("serial/parallel sweep equivalence", [jobs] { return parallel_equivalence(jobs); }));
    out.push_back(check("CSV round trip", csv_round_trip));
    return out;
}

}  // namespace optokerr
