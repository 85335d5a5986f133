#pragma once

#include "spinom/units.hpp"

#include <nlohmann/json.hpp>

namespace spinom::aero {

/// Tapered fiber above the spinning sphere, plus the media constants that
/// enter the intermolecular forces.
struct TaperGeometry {
    double r = 544e-9;          // fiber radius, m
    double L = 3e-6;            // deformation-region length, m
    double h0 = 0.0;            // stationary gap, m
    double h = 250e-9;          // taper-resonator separation, m
    double E_mod = 75e9;        // Young modulus, Pa
    double Upsilon = 9e9;       // elastic limit, Pa
    double mu_air = 1.81e-5;    // air viscosity, Pa s
    double eps0 = 1.0;          // dielectric constants: air, taper, resonator
    double eps1 = 3.9;
    double eps2 = 3.9;
    double n0 = 1.0;            // refractive indices: air, taper, resonator
    double n1 = 1.48;
    double n2 = 1.48;
    double B_const = 1e-76;     // short-range repulsion constant, J m^6
    double nu_e = 3e15;         // electronic absorption frequency
    bool nu_e_cyclic = true;    // nu_e in Hz (energy 2 pi hbar nu_e) or rad/s

    static TaperGeometry silica() { return {}; }
    void validate() const;
};

TaperGeometry geometry_from_json(const nlohmann::json& j, TaperGeometry base = {});
nlohmann::json to_json(const TaperGeometry& g);

/// I(h) = int_0^r (h - sqrt(r^2 - x^2) + r)^(-3/2) dx, in m^(-1/2).
double gap_integral(double r, double h);

/// Lubrication-film lift on the taper, N. Linear in Omega.
double air_pressure(const TaperGeometry& g, double R, double Omega);

struct Equilibrium {
    double d = 0.0;       // displacement, m
    double beta = 0.0;
    double phi = 0.0;     // 4 L d / (L^2 + 4 d^2)
    double strain = 0.0;  // phi^2 / 6
    bool small_angle = true;  // |phi| < 0.5
};

/// Throws NoEquilibrium when beta < 1.
Equilibrium equilibrium_displacement(double T_air, const TaperGeometry& g);

/// dF/dh = pi r^2 E d(strain)/dd, N/m. Throws NumericDomainError outside (0, L/2].
double elastic_restoring_slope(const TaperGeometry& g, double d);

/// Hamaker constant of taper / air / resonator at temperature T, J.
double hamaker_constant(const TaperGeometry& g, double T,
                        double hbar = constants::hbar, double k_B = constants::k_B);

/// van der Waals + short-range + Casimir force, N (negative = attractive).
double intermolecular_force(const TaperGeometry& g, double R, double A_ham, double h,
                            double hbar = constants::hbar, double c = constants::c);

struct SpinLimits {
    double Omega0 = 0.0;
    double Omega1 = 0.0;
    double Omega2 = 0.0;
    double Omega_max = 0.0;
    double varrho = 0.0;  // 1 / I(h), m^(1/2)
    double Lambda = 0.0;
};

SpinLimits spin_limits(const TaperGeometry& g, double R);

/// eta = q_s x_zp / d.
double breathing_ratio(double q_s, double x_zp, double d);

enum class LimitPolicy { ignore, warn, reject };

/// True when |Omega| exceeds limits.Omega_max. With LimitPolicy::reject an
/// InvalidParameter is thrown instead.
bool check_rotation_limit(double Omega, const SpinLimits& limits, LimitPolicy policy);

}  // namespace spinom::aero
