#pragma once

#include "spinom/sweep.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spinom {

struct PresetArgs {
    /// Backscattering rate for presets that need one and do not fix it
    /// (fig3_detuning). Defaults to kappa when empty.
    std::optional<double> J;
};

const std::vector<std::string>& preset_names();

/// Parameter bindings and grids of a named figure. Throws UnknownPreset,
/// listing the valid names.
SweepSpec preset(std::string_view name, const ModelConfig& base = {}, const PresetArgs& args = {});

}  // namespace spinom
