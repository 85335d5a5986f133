#include "spinom/params.hpp"

#include "spinom/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace spinom {

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw InvalidParameter(field, what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

double read_number(const nlohmann::json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_quantity(v.get<std::string>());
    throw ConfigError("field '" + key + "' must be a number or a quantity string");
}

}  // namespace

void SystemParams::validate() const {
    require(finite_positive(n), "n", "must be positive");
    require(std::isfinite(dn_dlambda), "dn_dlambda", "must be finite");
    require(finite_positive(m), "m", "must be positive");
    require(finite_positive(R), "R", "must be positive");
    require(finite_positive(lambda), "lambda", "must be positive");
    require(std::isfinite(Q) && Q >= 1.0, "Q", "must be >= 1");
    require(finite_positive(omega_m), "omega_m", "must be positive");
    require(finite_positive(gamma_m), "gamma_m", "must be positive");
    require(std::isfinite(T_bath) && T_bath >= 0.0, "T_bath", "must be >= 0");
    require(std::isfinite(J) && J >= 0.0, "J", "must be >= 0");
    require(finite_positive(hbar), "hbar", "must be positive");
    require(finite_positive(k_B), "k_B", "must be positive");
    require(finite_positive(c), "c", "must be positive");
    // The white-noise mechanical bath is only valid deep in the sideband-resolved regime.
    require(omega_m / gamma_m > 100.0, "gamma_m", "omega_m / gamma_m must exceed 100");
}

double thermal_occupation(double omega_m, double T, double hbar, double k_B) {
    if (T <= 0.0) return 0.0;
    const double x = hbar * omega_m / (k_B * T);
    return 1.0 / std::expm1(x);
}

DerivedConstants derive_constants(const SystemParams& p) {
    p.validate();
    DerivedConstants d;
    d.omega_c = 2.0 * std::numbers::pi * p.c / p.lambda;
    d.kappa = d.omega_c / p.Q;
    d.x_zp = std::sqrt(p.hbar / (p.m * p.omega_m));
    d.G0 = d.omega_c * d.x_zp / p.R;
    d.n_m = thermal_occupation(p.omega_m, p.T_bath, p.hbar, p.k_B);
    d.Q_m = p.omega_m / p.gamma_m;
    return d;
}

SystemParams params_from_json(const nlohmann::json& j, SystemParams base) {
    if (!j.is_object()) throw ConfigError("parameter set must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        const double x = read_number(v, key);
        if (key == "n") base.n = x;
        else if (key == "dn_dlambda") base.dn_dlambda = x;
        else if (key == "m") base.m = x;
        else if (key == "R") base.R = x;
        else if (key == "lambda") base.lambda = x;
        else if (key == "Q") base.Q = x;
        else if (key == "omega_m") base.omega_m = x;
        else if (key == "gamma_m") base.gamma_m = x;
        else if (key == "T_bath") base.T_bath = x;
        else if (key == "J") base.J = x;
        else if (key == "hbar") base.hbar = x;
        else if (key == "k_B") base.k_B = x;
        else if (key == "c") base.c = x;
        else throw ConfigError("unknown parameter '" + key + "'");
    }
    return base;
}

nlohmann::json to_json(const SystemParams& p) {
    return {
        {"n", p.n}, {"dn_dlambda", p.dn_dlambda}, {"m", p.m}, {"R", p.R},
        {"lambda", p.lambda}, {"Q", p.Q}, {"omega_m", p.omega_m}, {"gamma_m", p.gamma_m},
        {"T_bath", p.T_bath}, {"J", p.J}, {"hbar", p.hbar}, {"k_B", p.k_B}, {"c", p.c},
    };
}

}  // namespace spinom
