#include "optokerr/presets.hpp"

#include "optokerr/errors.hpp"

#include <cmath>
#include <numbers>

namespace optokerr {

std::string_view to_string(PresetKind kind) {
    switch (kind) {
        case PresetKind::sweep: return "sweep";
        case PresetKind::hysteresis: return "hysteresis";
        case PresetKind::maximize: return "maximize";
    }
    return "sweep";
}

const std::vector<std::string>& preset_ids() {
    static const std::vector<std::string> ids{"fig2a", "fig2b", "fig2c", "fig3",  "fig4",
                                              "fig5a", "fig5b", "fig6",  "fig7",  "fig8",
                                              "fig9",  "fig10", "fig11", "table1"};
    return ids;
}

namespace {

constexpr double pi = std::numbers::pi;
constexpr double mw = 1e-3;

// Baseline device with kappa given in units of omega_m and G in units of kappa.
SystemParams device(double kappa_wm, double g_kappa, double theta_pi, double chi, double p_mw) {
    SystemParams p;
    p.cavity_decay = kappa_wm * p.mech_freq;
    p.opa_gain = g_kappa * p.cavity_decay;
    p.opa_phase = theta_pi * pi;
    p.kerr_coeff = chi;
    p.input_power = p_mw * mw;
    return p;
}

std::string number_label(double x) {
    std::string s = std::to_string(x);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

SweepSpec bare_detuning_sweep(const SystemParams& p, std::size_t n) {
    SweepSpec s;
    s.base = p;
    s.axes.push_back(Axis::linear("bare_detuning", -4.0 * p.mech_freq, 4.0 * p.mech_freq, n));
    return s;
}

SweepSpec detuning_sweep(const SystemParams& p, double hi_wm, std::size_t n) {
    SweepSpec s;
    s.base = p;
    s.axes.push_back(Axis::linear(std::string(effective_detuning_axis), 0.02 * p.mech_freq,
                                  hi_wm * p.mech_freq, n));
    return s;
}

SweepSpec power_sweep(const SystemParams& p, double lo_mw, double hi_mw, std::size_t n) {
    SweepSpec s;
    s.base = p;
    s.axes.push_back(Axis::linear("input_power", lo_mw * mw, hi_mw * mw, n));
    return s;
}

SweepSpec power_detuning_grid(const SystemParams& p, double hi_wm, std::size_t n) {
    SweepSpec s = power_sweep(p, 0.1, 10.0, n);
    s.axes.push_back(Axis::linear(std::string(effective_detuning_axis), 0.01 * p.mech_freq,
                                  hi_wm * p.mech_freq, n));
    return s;
}

FigurePreset make(std::string_view id, std::size_t n) {
    FigurePreset f;
    f.id = std::string(id);

    if (id == "fig2a") {
        f.description = "intensity vs bare detuning for chi = 0.01, 0.04, 0.1 (G = 0.6 kappa, theta = pi/2)";
        for (double chi : {0.01, 0.04, 0.1})
            f.curves.push_back({"chi=" + number_label(chi),
                                bare_detuning_sweep(device(0.9, 0.6, 0.5, chi, 15.0), n)});
    } else if (id == "fig2b") {
        f.description = "intensity vs bare detuning for G = 0, 0.6, 1.1 kappa (chi = 0.1, theta = pi/2)";
        for (double g : {0.0, 0.6, 1.1})
            f.curves.push_back({"G/kappa=" + number_label(g),
                                bare_detuning_sweep(device(0.9, g, 0.5, 0.1, 15.0), n)});
    } else if (id == "fig2c") {
        f.description = "intensity vs bare detuning for theta = 0.5, 0.75, 1.0 pi (G = 1.1 kappa, chi = 0.04)";
        for (double th : {0.5, 0.75, 1.0})
            f.curves.push_back({"theta/pi=" + number_label(th),
                                bare_detuning_sweep(device(0.9, 1.1, th, 0.04, 15.0), n)});
    } else if (id == "fig3") {
        f.description = "hysteresis of the intensity vs input power at Delta0 = -2.5 omega_m (bi-, tri- and monostable)";
        f.kind = PresetKind::hysteresis;
        for (double th : {0.3, 0.57, 0.8}) {
            SystemParams p = device(0.9, 1.0, th, 0.05, 15.0);
            p.bare_detuning = -2.5 * p.mech_freq;
            SweepSpec s = power_sweep(p, 1.0, 150.0, n);
            s.branch_policy = BranchPolicy::continuity;
            f.curves.push_back({"theta/pi=" + number_label(th), s});
        }
    } else if (id == "fig4") {
        f.description = "effective temperature vs effective detuning (bare cavity, G = 0.6 and 0.8 kappa)";
        f.curves.push_back({"bare", detuning_sweep(device(0.3, 0.0, 0.0, 0.0, 5.0), 2.0, n)});
        f.curves.push_back({"G/kappa=0.6", detuning_sweep(device(0.3, 0.6, 0.81, 0.05, 5.0), 2.0, n)});
        f.curves.push_back({"G/kappa=0.8", detuning_sweep(device(0.3, 0.8, 0.71, 0.05, 5.0), 2.0, n)});
    } else if (id == "fig5a" || id == "fig5b") {
        const bool cold = id == "fig5b";
        f.description = std::string("effective temperature vs effective detuning for several chi, T0 = ") +
                        (cold ? "25 mK" : "400 mK");
        for (double chi : {0.0, 0.03, 0.06, 0.1}) {
            SystemParams p = device(0.3, 0.8, 0.75, chi, 5.0);
            if (cold) p.bath_temperature = 0.025;
            f.curves.push_back({"chi=" + number_label(chi), detuning_sweep(p, 1.5, n)});
        }
    } else if (id == "fig6") {
        f.description = "eta1 over input power and effective detuning (G = 0.8 kappa, theta = 3pi/4, chi = 0.03)";
        f.curves.push_back({"chi=0.03", power_detuning_grid(device(0.3, 0.8, 0.75, 0.03, 5.0), 1.0, n)});
    } else if (id == "fig7") {
        f.description = "effective temperature and log-negativity vs input power at Delta = 0.5 omega_m";
        SystemParams p = device(0.3, 1.3, 0.67, 0.05, 5.0);
        SweepSpec s = power_sweep(p, 0.1, 10.0, n);
        s.fixed_effective_detuning = 0.5 * p.mech_freq;
        f.curves.push_back({"G/kappa=1.3", s});
    } else if (id == "fig8") {
        f.description = "log-negativity vs effective detuning for theta = 0.57 .. 0.72 pi (P = 3 mW, G = 1.3 kappa)";
        for (double th : {0.57, 0.62, 0.67, 0.72})
            f.curves.push_back({"theta/pi=" + number_label(th),
                                detuning_sweep(device(0.3, 1.3, th, 0.05, 3.0), 1.5, n)});
    } else if (id == "fig9") {
        f.description = "log-negativity over input power and effective detuning for G = 0.6 and 1 kappa";
        for (double g : {0.6, 1.0})
            f.curves.push_back({"G/kappa=" + number_label(g),
                                power_detuning_grid(device(0.3, g, 0.67, 0.05, 5.0), 1.5, n)});
    } else if (id == "fig10") {
        f.description = "log-negativity vs effective detuning for chi = 0, 0.03, 0.05 (G = kappa, P = 6 mW)";
        for (double chi : {0.0, 0.03, 0.05})
            f.curves.push_back({"chi=" + number_label(chi),
                                detuning_sweep(device(0.3, 1.0, 0.67, chi, 6.0), 2.0, n)});
    } else if (id == "fig11") {
        f.description = "log-negativity and eta1 on every branch vs input power, tristable regime";
        SystemParams p = device(0.9, 1.0, 0.57, 0.05, 15.0);
        p.bare_detuning = -2.5 * p.mech_freq;
        f.curves.push_back({"theta/pi=0.57", power_sweep(p, 1.0, 150.0, n)});
    } else if (id == "table1") {
        f.description = "maximum log-negativity over the effective detuning for (G, P) in {0.6, 1} kappa x {2.5, 5} mW";
        f.kind = PresetKind::maximize;
        for (double pw : {2.5, 5.0})
            for (double g : {0.6, 1.0})
                f.curves.push_back({"G/kappa=" + number_label(g) + " P/mW=" + number_label(pw),
                                    detuning_sweep(device(0.3, g, 0.67, 0.05, pw), 1.5, n)});
    } else {
        throw ConfigError("unknown preset '" + std::string(id) + "'");
    }
    for (auto& c : f.curves) c.spec.label = c.label;
    return f;
}

}  // namespace

FigurePreset figure_preset(std::string_view id, std::size_t points) {
    if (points < 2) throw ConfigError("preset axes need at least 2 points");
    return make(id, points);
}

}  // namespace optokerr
