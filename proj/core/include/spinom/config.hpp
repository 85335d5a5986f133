#pragma once

#include "spinom/aeromech.hpp"
#include "spinom/optics.hpp"
#include "spinom/params.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string_view>

namespace spinom {

/// Everything needed to evaluate one parameter point.
struct ModelConfig {
    SystemParams params{};
    DriveConfig drive{};
    aero::TaperGeometry geometry{};
    SolverOptions solver{};
    aero::LimitPolicy omega_limit = aero::LimitPolicy::warn;
};

/// Config file layout:
///   { "params":   { <SystemParams fields> },
///     "drive":    { "direction", "P", "Delta_c", "Omega", "rotation_sense", "Omega_r" },
///     "geometry": { <TaperGeometry fields> },
///     "solver":   { "damping", "max_iterations", "tolerance", "damping_retries" },
///     "omega_limit": "ignore" | "warn" | "reject" }
/// All sections are optional; unknown keys raise ConfigError.
ModelConfig config_from_json(const nlohmann::json& j, ModelConfig base = {});
nlohmann::json to_json(const ModelConfig& c);
ModelConfig load_config_file(const std::filesystem::path& path, ModelConfig base = {});

/// Canonical "section.field" form of `path`. Bare field names are accepted
/// when unambiguous ("T_bath" -> "params.T_bath"). Throws ConfigError.
std::string resolve_path(std::string_view path);

/// Sets a numeric field in SI units. "drive.Omega_r" sets the signed rotation
/// seen by the current input direction.
void apply_setting(ModelConfig& c, std::string_view path, double value);

/// Same, from text: numbers with unit suffixes and enum names are accepted.
void apply_setting(ModelConfig& c, std::string_view path, std::string_view text);

/// Applies a JSON value (number or string) to `path`.
void apply_setting(ModelConfig& c, std::string_view path, const nlohmann::json& value);

/// Parses "key=value" as given to --set.
void apply_override(ModelConfig& c, std::string_view assignment);

}  // namespace spinom
