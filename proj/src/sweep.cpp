#include "optokerr/sweep.hpp"

#include "optokerr/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

namespace optokerr {

Axis Axis::linear(std::string parameter, double min, double max, std::size_t count) {
    Axis a{std::move(parameter), {}};
    a.values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (count == 1) {
            a.values.push_back(min);
        } else if (i + 1 == count) {
            a.values.push_back(max);
        } else {
            const double t = static_cast<double>(i) / static_cast<double>(count - 1);
            a.values.push_back(min + (max - min) * t);
        }
    }
    return a;
}

namespace {

bool is_axis_parameter(std::string_view name) {
    return name == effective_detuning_axis || find_param_field(name).has_value();
}

}  // namespace

void validate_spec(const SweepSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 2) {
        throw ConfigError("a sweep needs one or two axes");
    }
    bool bare_axis = false;
    bool effective_axis = false;
    for (const Axis& a : spec.axes) {
        if (!is_axis_parameter(a.parameter)) {
            throw ConfigError("unknown axis parameter '" + a.parameter + "'");
        }
        if (a.values.size() < 2) {
            throw ConfigError("axis '" + a.parameter + "' needs at least 2 points");
        }
        for (double v : a.values) {
            if (!std::isfinite(v)) throw ConfigError("axis '" + a.parameter + "' has a non-finite value");
        }
        bare_axis = bare_axis || a.parameter == "bare_detuning";
        effective_axis = effective_axis || a.parameter == effective_detuning_axis;
    }
    if (spec.axes.size() == 2 && spec.axes[0].parameter == spec.axes[1].parameter) {
        throw ConfigError("both axes sweep '" + spec.axes[0].parameter + "'");
    }
    const bool fixed = spec.fixed_effective_detuning.has_value() || effective_axis;
    if (spec.fixed_effective_detuning && effective_axis) {
        throw ConfigError("fixed effective detuning conflicts with an effective_detuning axis");
    }
    if (fixed && bare_axis) {
        throw ConfigError("bare_detuning cannot be swept while the effective detuning is held");
    }
    if (spec.fixed_effective_detuning && !std::isfinite(*spec.fixed_effective_detuning)) {
        throw ConfigError("fixed effective detuning must be finite");
    }
    (void)validated(spec.base);
}

std::size_t grid_size(const SweepSpec& spec) {
    std::size_t n = 1;
    for (const Axis& a : spec.axes) n *= a.values.size();
    return n;
}

namespace {

std::vector<double> axis_values_at(const SweepSpec& spec, std::size_t index) {
    std::vector<double> vals(spec.axes.size());
    std::size_t rest = index;
    for (std::size_t k = spec.axes.size(); k-- > 0;) {
        const std::size_t n = spec.axes[k].values.size();
        vals[k] = spec.axes[k].values[rest % n];
        rest /= n;
    }
    return vals;
}

}  // namespace

SystemParams point_params(const SweepSpec& spec, std::size_t index,
                          std::optional<double>& delta_eff) {
    SystemParams p = spec.base;
    delta_eff = spec.fixed_effective_detuning;
    const std::vector<double> vals = axis_values_at(spec, index);
    for (std::size_t k = 0; k < spec.axes.size(); ++k) {
        const std::string& name = spec.axes[k].parameter;
        if (name == effective_detuning_axis) {
            delta_eff = vals[k];
        } else {
            p.*(find_param_field(name)->member) = vals[k];
        }
    }
    return p;
}

namespace {

void fill_record(SweepRecord& r, const PointAnalysis& pa, const BranchAnalysis& b) {
    r.branch_index = b.branch.branch_index;
    r.branch_label = b.label;
    r.branch_count = static_cast<int>(pa.branches.size());
    r.bare_detuning = pa.params.bare_detuning;
    r.intensity = b.branch.intensity;
    r.delta_eff = b.branch.delta_eff;
    r.g1 = b.sys.g1;
    if (b.stability) {
        r.eta1 = b.stability->eta1;
        r.eta2 = b.stability->eta2;
        r.stable = b.stability->stable;
        r.max_real_eigenvalue = b.stability->max_real;
        r.rh_disagreement = b.stability->disagreement;
    }
    if (b.observables) {
        const Observables& o = *b.observables;
        r.n_eff = o.n_eff;
        r.t_eff = o.t_eff;
        r.ground_state = o.ground_state;
        r.e_n = o.e_n;
        r.photon_fluct = o.photon_fluct;
        r.linearization_ratio = o.linearization_ratio;
        r.lyapunov_residual = o.lyapunov_residual;
        r.min_symplectic = o.min_symplectic;
    }
    r.n_eff_approx = b.n_eff_approx;
    r.linearization_suspect = b.linearization_suspect;
    r.analytic_valid = b.validity.valid();
    r.error = b.error;
}

std::vector<SweepRecord> records_from(const PointAnalysis& pa, const SweepRecord& proto) {
    std::vector<SweepRecord> out;
    out.reserve(pa.branches.size());
    for (const BranchAnalysis& b : pa.branches) {
        SweepRecord r = proto;
        fill_record(r, pa, b);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

std::vector<SweepRecord> evaluate_point(const SweepSpec& spec, std::size_t index) {
    SweepRecord proto;
    proto.point_index = index;
    proto.axis_values = axis_values_at(spec, index);
    try {
        std::optional<double> delta_eff;
        const SystemParams p = point_params(spec, index, delta_eff);
        const PointAnalysis pa =
            delta_eff ? analyze_at_effective_detuning(p, *delta_eff) : analyze_point(p);
        return records_from(pa, proto);
    } catch (const Error& e) {
        proto.error = e.what();
        return {proto};
    }
}

namespace {

std::vector<SweepRecord> flatten(std::vector<std::vector<SweepRecord>>& slots) {
    std::size_t total = 0;
    for (const auto& s : slots) total += s.size();
    std::vector<SweepRecord> out;
    out.reserve(total);
    for (auto& s : slots)
        for (auto& r : s) out.push_back(std::move(r));
    return out;
}

std::vector<SweepRecord> apply_policy(const SweepSpec& spec, std::vector<SweepRecord> records) {
    if (spec.branch_policy == BranchPolicy::all) return records;
    return follow_branch(records, spec.axes.back().values.size());
}

}  // namespace

std::vector<SweepRecord> run_sweep_serial(const SweepSpec& spec) {
    validate_spec(spec);
    const std::size_t n = grid_size(spec);
    std::vector<std::vector<SweepRecord>> slots(n);
    for (std::size_t i = 0; i < n; ++i) slots[i] = evaluate_point(spec, i);
    return apply_policy(spec, flatten(slots));
}

std::vector<SweepRecord> run_sweep_parallel(const SweepSpec& spec, int jobs) {
    validate_spec(spec);
    const auto n = static_cast<std::ptrdiff_t>(grid_size(spec));
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    std::vector<std::vector<SweepRecord>> slots(static_cast<std::size_t>(n));
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            slots[static_cast<std::size_t>(i)] = evaluate_point(spec, static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(optokerr_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return apply_policy(spec, flatten(slots));
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, int jobs) {
    return jobs == 1 ? run_sweep_serial(spec) : run_sweep_parallel(spec, jobs);
}

namespace {

// Index into `candidates` of the branch continuing `prev`: same physical
// label if it still exists, otherwise the nearest intensity.
std::size_t continue_branch(const std::vector<const SweepRecord*>& candidates,
                            const SweepRecord& prev, bool& jumped) {
    jumped = true;
    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (candidates[k]->branch_label == prev.branch_label) {
            jumped = false;
            return k;
        }
        const double gap = std::abs(candidates[k]->intensity - prev.intensity);
        if (gap < best_gap) {
            best_gap = gap;
            best = k;
        }
    }
    return best;
}

std::vector<std::vector<const SweepRecord*>> group_by_point(const std::vector<SweepRecord>& records) {
    std::vector<std::vector<const SweepRecord*>> groups;
    for (const SweepRecord& r : records) {
        if (groups.empty() || groups.back().front()->point_index != r.point_index) groups.emplace_back();
        groups.back().push_back(&r);
    }
    return groups;
}

}  // namespace

std::vector<SweepRecord> follow_branch(const std::vector<SweepRecord>& records,
                                       std::size_t inner_count) {
    std::vector<SweepRecord> out;
    const SweepRecord* prev = nullptr;
    std::size_t prev_row = std::numeric_limits<std::size_t>::max();
    for (const auto& group : group_by_point(records)) {
        const std::size_t row = group.front()->point_index / std::max<std::size_t>(inner_count, 1);
        if (row != prev_row) prev = nullptr;
        prev_row = row;
        if (group.front()->branch_index < 0) {
            out.push_back(*group.front());
            continue;
        }
        std::size_t pick = 0;
        if (prev) {
            bool jumped = false;
            pick = continue_branch(group, *prev, jumped);
        }
        out.push_back(*group[pick]);
        prev = group[pick];
    }
    return out;
}

namespace {

std::vector<TracePoint> trace(const std::vector<std::vector<const SweepRecord*>>& groups,
                              bool ascending, std::vector<double>& jumps) {
    std::vector<TracePoint> path;
    const SweepRecord* prev = nullptr;
    const std::size_t n = groups.size();
    for (std::size_t step = 0; step < n; ++step) {
        const auto& group = groups[ascending ? step : n - 1 - step];
        if (group.front()->branch_index < 0) continue;
        std::size_t pick = ascending ? 0 : group.size() - 1;
        bool jumped = false;
        if (prev) pick = continue_branch(group, *prev, jumped);
        const SweepRecord& r = *group[pick];
        const double power = r.axis_values.front();
        if (jumped) jumps.push_back(power);
        path.push_back({power, r.intensity, r.branch_label, r.branch_index, r.stable, jumped});
        prev = &r;
    }
    return path;
}

}  // namespace

HysteresisTrace hysteresis_trace(const SweepSpec& spec, int jobs) {
    if (spec.axes.size() != 1 || spec.axes.front().parameter != "input_power") {
        throw ConfigError("hysteresis needs a single input_power axis");
    }
    if (!std::is_sorted(spec.axes.front().values.begin(), spec.axes.front().values.end())) {
        throw ConfigError("hysteresis needs an ascending input_power axis");
    }
    SweepSpec all = spec;
    all.branch_policy = BranchPolicy::all;
    const std::vector<SweepRecord> records = run_sweep(all, jobs);
    const auto groups = group_by_point(records);
    HysteresisTrace h;
    h.up = trace(groups, true, h.up_jumps);
    h.down = trace(groups, false, h.down_jumps);
    return h;
}

namespace {

SweepRecord record_at(const SystemParams& base, double delta) {
    SweepSpec spec;
    spec.base = base;
    spec.axes.push_back(Axis{std::string(effective_detuning_axis), {delta}});
    return evaluate_point(spec, 0).front();
}

double objective(const SweepRecord& r) {
    return (r.stable && r.e_n) ? *r.e_n : -1.0;
}

}  // namespace

EntanglementMaximum maximize_entanglement(const SystemParams& base, double lo, double hi,
                                          std::size_t coarse_points) {
    if (!(hi > lo) || coarse_points < 3) {
        throw ConfigError("maximization needs lo < hi and at least 3 coarse points");
    }
    const Axis grid = Axis::linear(std::string(effective_detuning_axis), lo, hi, coarse_points);
    std::size_t best = 0;
    double best_value = -2.0;
    SweepRecord best_record;
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        SweepRecord r = record_at(base, grid.values[i]);
        const double f = objective(r);
        if (f > best_value) {
            best_value = f;
            best = i;
            best_record = std::move(r);
        }
    }
    EntanglementMaximum result;
    result.effective_detuning = grid.values[best];
    result.record = best_record;
    result.found = best_value >= 0.0;
    if (!result.found) return result;

    const double inv_phi = std::numbers::phi - 1.0;
    double a = grid.values[best == 0 ? 0 : best - 1];
    double b = grid.values[std::min(best + 1, grid.values.size() - 1)];
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    SweepRecord r1 = record_at(base, x1);
    SweepRecord r2 = record_at(base, x2);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(std::abs(a), std::abs(b)); ++it) {
        if (objective(r1) >= objective(r2)) {
            b = x2;
            x2 = x1;
            r2 = std::move(r1);
            x1 = b - inv_phi * (b - a);
            r1 = record_at(base, x1);
        } else {
            a = x1;
            x1 = x2;
            r1 = std::move(r2);
            x2 = a + inv_phi * (b - a);
            r2 = record_at(base, x2);
        }
    }
    const bool first = objective(r1) >= objective(r2);
    const SweepRecord& refined = first ? r1 : r2;
    if (objective(refined) > best_value) {
        result.effective_detuning = first ? x1 : x2;
        result.record = refined;
    }
    return result;
}

}  // namespace optokerr
