#include "spinom/units.hpp"

#include "spinom/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <string>
#include <utility>

namespace spinom {

namespace {

struct UnitEntry {
    std::string_view name;
    double factor;
};

// Frequencies are angular rates throughout, so "kHz" is 1e3 rad/s.
constexpr std::array<UnitEntry, 36> kUnits{{
    {"rad/s", 1.0}, {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9},
    {"THz", 1e12}, {"PHz", 1e15}, {"1/s", 1.0},
    {"K", 1.0}, {"mK", 1e-3}, {"uK", 1e-6},
    {"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6},
    {"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"µm", 1e-6}, {"nm", 1e-9}, {"pm", 1e-12},
    {"fm", 1e-15},
    {"kg", 1.0}, {"g", 1e-3}, {"mg", 1e-6}, {"ug", 1e-9}, {"ng", 1e-12},
    {"Pa", 1.0}, {"kPa", 1e3}, {"MPa", 1e6}, {"GPa", 1e9}, {"Pa*s", 1.0}, {"Pa s", 1.0},
    {"J", 1.0}, {"s", 1.0}, {"N", 1.0}, {"uN", 1e-6},
}};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

double unit_factor(std::string_view unit) {
    unit = trim(unit);
    if (unit.empty()) return 1.0;
    for (const auto& u : kUnits) {
        if (u.name == unit) return u.factor;
    }
    throw ConfigError("unknown unit '" + std::string(unit) + "'");
}

double parse_quantity(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) throw ConfigError("empty quantity");
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{}) {
        throw ConfigError("malformed quantity '" + std::string(s) + "'");
    }
    const std::string_view rest(ptr, static_cast<std::size_t>(s.data() + s.size() - ptr));
    return value * unit_factor(rest);
}

}  // namespace spinom
