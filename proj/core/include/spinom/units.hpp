#pragma once

#include <string>
#include <string_view>

namespace spinom {

// CODATA 2018 exact / recommended values, SI.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double k_B = 1.380649e-23;       // J / K
inline constexpr double c = 299792458.0;          // m / s
}  // namespace constants

/// Parses a quantity such as "63 MHz", "130 mK", "20 mW", "1.55 um" or "0.02"
/// into SI. Frequency units (Hz, kHz, MHz, GHz, THz, PHz) are taken as
/// angular rates: "8 kHz" becomes 8e3 rad/s, matching how every rate in the
/// model is treated. A bare number is returned unchanged.
/// Throws ConfigError on an unknown suffix or malformed number.
double parse_quantity(std::string_view text);

/// Multiplier from `unit` to SI, or throws ConfigError.
double unit_factor(std::string_view unit);

}  // namespace spinom
