#pragma once

#include "optokerr/sweep.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace optokerr {

enum class PresetKind {
    sweep,       // run_sweep per curve
    hysteresis,  // hysteresis_trace per curve
    maximize,    // maximize_entanglement over the curve's effective_detuning axis
};

std::string_view to_string(PresetKind kind);

struct PresetCurve {
    std::string label;
    SweepSpec spec;
};

struct FigurePreset {
    std::string id;
    std::string description;
    PresetKind kind = PresetKind::sweep;
    std::vector<PresetCurve> curves;
};

const std::vector<std::string>& preset_ids();

// Throws ConfigError for an unknown id. `points` sets every axis length.
FigurePreset figure_preset(std::string_view id, std::size_t points = default_axis_points);

}  // namespace optokerr
