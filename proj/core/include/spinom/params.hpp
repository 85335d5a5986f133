#pragma once

#include "spinom/units.hpp"

#include <nlohmann/json.hpp>

namespace spinom {

/// Physical constants and device parameters, SI throughout. Every rate is an
/// angular rate in rad/s.
struct SystemParams {
    double n = 1.48;               // refractive index
    double dn_dlambda = 0.0;       // dispersion dn/dlambda, 1/m
    double m = 10e-12;             // effective mass, kg
    double R = 1.1e-3;             // resonator radius, m
    double lambda = 1.55e-6;       // vacuum wavelength, m
    double Q = 3.2e7;              // optical quality factor
    double omega_m = 6.3e7;        // mechanical frequency, rad/s
    double gamma_m = 5.2e3;        // mechanical damping, rad/s
    double T_bath = 0.13;          // bath temperature, K
    double J = 0.0;                // backscattering coupling, rad/s

    double hbar = constants::hbar;
    double k_B = constants::k_B;
    double c = constants::c;

    /// Silica microsphere of the reference device.
    static SystemParams silica() { return {}; }

    /// Throws InvalidParameter naming the first offending field.
    void validate() const;
};

struct DerivedConstants {
    double omega_c = 0.0;  // optical angular frequency, rad/s
    double kappa = 0.0;    // optical decay rate, rad/s
    double x_zp = 0.0;     // zero-point motion, m
    double G0 = 0.0;       // single-photon coupling, rad/s
    double n_m = 0.0;      // thermal phonon occupation
    double Q_m = 0.0;      // mechanical quality factor
};

DerivedConstants derive_constants(const SystemParams& p);

/// Bose-Einstein occupation [exp(hbar w / k_B T) - 1]^-1; exactly 0 at T = 0.
double thermal_occupation(double omega_m, double T,
                          double hbar = constants::hbar, double k_B = constants::k_B);

/// Reads fields named as in SystemParams on top of `base`. Values may be
/// numbers (SI) or strings with a unit suffix. Unknown keys are a ConfigError.
SystemParams params_from_json(const nlohmann::json& j, SystemParams base = {});
nlohmann::json to_json(const SystemParams& p);

}  // namespace spinom
