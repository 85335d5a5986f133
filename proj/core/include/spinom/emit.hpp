#pragma once

#include "spinom/sweep.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace spinom {

enum class Format { csv, json };

Format format_from_string(std::string_view s);

/// 17 significant digits, "%.17g".
std::string format_double(double v);

/// CSV: one header row, then one row per grid point. With several drive
/// directions the table is pivoted and direction-dependent columns get a
/// "_left" / "_right" suffix. Missing values are empty fields.
void write_csv(const Table& table, std::ostream& out);

nlohmann::json table_to_json(const Table& table);
Table table_from_json(const nlohmann::json& j);

void emit(const Table& table, Format format, std::ostream& out);

/// Writes to `path`; CSV output gets a "<path>.meta.json" sidecar carrying
/// the metadata. Throws IoError with the path on failure.
void emit(const Table& table, Format format, const std::filesystem::path& path);

}  // namespace spinom
