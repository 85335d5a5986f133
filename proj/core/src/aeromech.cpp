#include "spinom/aeromech.hpp"

#include "spinom/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace spinom::aero {

namespace {

constexpr double pi = std::numbers::pi;

// Prefactors of the lubrication lift and of the third spin limit.
constexpr double kLift = 6.19;
constexpr double kLimit0 = 3.0 * kLift;
constexpr double kLimit2 = kLift / 2.0;

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw InvalidParameter(field, what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

double read_number(const nlohmann::json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_quantity(v.get<std::string>());
    throw ConfigError("geometry field '" + key + "' must be a number or a quantity string");
}

}  // namespace

void TaperGeometry::validate() const {
    require(finite_positive(r), "r", "must be positive");
    require(finite_positive(L), "L", "must be positive");
    require(std::isfinite(h0) && h0 >= 0.0, "h0", "must be >= 0");
    require(finite_positive(h), "h", "must be positive");
    require(h >= h0, "h", "must be >= h0");
    require(finite_positive(E_mod), "E_mod", "must be positive");
    require(finite_positive(Upsilon), "Upsilon", "must be positive");
    require(finite_positive(mu_air), "mu_air", "must be positive");
    require(finite_positive(eps0), "eps0", "must be positive");
    require(finite_positive(eps1), "eps1", "must be positive");
    require(finite_positive(eps2), "eps2", "must be positive");
    require(finite_positive(n0), "n0", "must be positive");
    require(finite_positive(n1), "n1", "must be positive");
    require(finite_positive(n2), "n2", "must be positive");
    require(std::isfinite(B_const) && B_const >= 0.0, "B_const", "must be >= 0");
    require(std::isfinite(nu_e) && nu_e >= 0.0, "nu_e", "must be >= 0");
}

TaperGeometry geometry_from_json(const nlohmann::json& j, TaperGeometry base) {
    if (!j.is_object()) throw ConfigError("geometry must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "nu_e_cyclic") {
            if (!v.is_boolean()) throw ConfigError("geometry field 'nu_e_cyclic' must be a boolean");
            base.nu_e_cyclic = v.get<bool>();
            continue;
        }
        const double x = read_number(v, key);
        if (key == "r") base.r = x;
        else if (key == "L") base.L = x;
        else if (key == "h0") base.h0 = x;
        else if (key == "h") base.h = x;
        else if (key == "E_mod") base.E_mod = x;
        else if (key == "Upsilon") base.Upsilon = x;
        else if (key == "mu_air") base.mu_air = x;
        else if (key == "eps0") base.eps0 = x;
        else if (key == "eps1") base.eps1 = x;
        else if (key == "eps2") base.eps2 = x;
        else if (key == "n0") base.n0 = x;
        else if (key == "n1") base.n1 = x;
        else if (key == "n2") base.n2 = x;
        else if (key == "B_const") base.B_const = x;
        else if (key == "nu_e") base.nu_e = x;
        else throw ConfigError("unknown geometry field '" + key + "'");
    }
    return base;
}

nlohmann::json to_json(const TaperGeometry& g) {
    return {
        {"r", g.r}, {"L", g.L}, {"h0", g.h0}, {"h", g.h}, {"E_mod", g.E_mod},
        {"Upsilon", g.Upsilon}, {"mu_air", g.mu_air}, {"eps0", g.eps0}, {"eps1", g.eps1},
        {"eps2", g.eps2}, {"n0", g.n0}, {"n1", g.n1}, {"n2", g.n2}, {"B_const", g.B_const},
        {"nu_e", g.nu_e}, {"nu_e_cyclic", g.nu_e_cyclic},
    };
}

double gap_integral(double r, double h) {
    if (!(r > 0.0) || !(h > 0.0)) throw NumericDomainError("gap integral needs r > 0 and h > 0");
    // x = r sin t removes the square-root endpoint at x = r; what remains is a
    // smooth peak of width ~sqrt(h/r) at t = 0.
    auto f = [r, h](double t) {
        const double c = std::cos(t);
        return r * c * std::pow(h + r - r * c, -1.5);
    };
    double err = 0.0;
    const double I = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, 0.0, pi / 2.0, 20, 1e-11, &err);
    return I;
}

double air_pressure(const TaperGeometry& g, double R, double Omega) {
    if (Omega == 0.0) return 0.0;
    return kLift * g.mu_air * std::pow(R, 2.5) * Omega * gap_integral(g.r, g.h);
}

Equilibrium equilibrium_displacement(double T_air, const TaperGeometry& g) {
    Equilibrium e;
    if (T_air <= 0.0) {
        e.beta = std::numeric_limits<double>::infinity();
        return e;
    }
    e.beta = std::cbrt(pi * g.r * g.r * g.E_mod / (3.0 * T_air));
    if (e.beta < 1.0) {
        throw NoEquilibrium("lift exceeds the elastic branch: beta = " + std::to_string(e.beta));
    }
    const double root = std::sqrt(e.beta * e.beta - 1.0);
    e.d = 0.5 * g.L / (e.beta + root);
    e.phi = 4.0 * g.L * e.d / (g.L * g.L + 4.0 * e.d * e.d);
    e.strain = e.phi * e.phi / 6.0;
    e.small_angle = std::abs(e.phi) < 0.5;
    return e;
}

double elastic_restoring_slope(const TaperGeometry& g, double d) {
    if (!(d > 0.0) || d > 0.5 * g.L) {
        throw NumericDomainError("restoring slope needs 0 < d <= L/2");
    }
    const double L2 = g.L * g.L;
    const double s = L2 + 4.0 * d * d;
    return 16.0 * pi * g.r * g.r * g.E_mod * L2 * d * (L2 - 4.0 * d * d) / (3.0 * s * s * s);
}

double hamaker_constant(const TaperGeometry& g, double T, double hbar, double k_B) {
    const double em1 = g.eps1 - g.eps0, ep1 = g.eps1 + g.eps0;
    const double em2 = g.eps2 - g.eps0, ep2 = g.eps2 + g.eps0;
    const double n02 = g.n0 * g.n0;
    const double nm1 = std::sqrt(g.n1 * g.n1 - n02), np1 = std::sqrt(g.n1 * g.n1 + n02);
    const double nm2 = std::sqrt(g.n2 * g.n2 - n02), np2 = std::sqrt(g.n2 * g.n2 + n02);
    if (!std::isfinite(nm1) || !std::isfinite(nm2)) {
        throw NumericDomainError("Hamaker constant needs n1, n2 >= n0");
    }
    const double omega_e = g.nu_e_cyclic ? 2.0 * pi * g.nu_e : g.nu_e;
    const double nu = 3.0 * std::numbers::sqrt2 * hbar * omega_e / 16.0;
    const double zero_freq = 3.0 * em1 * em2 * k_B * T / (4.0 * ep1 * ep2);
    const double nn = nm1 * nm2;
    return zero_freq + nu * nn * nn / (np1 * np2 * (np1 + np2));
}

double intermolecular_force(const TaperGeometry& g, double R, double A_ham, double h,
                            double hbar, double c) {
    if (!(h > 0.0)) throw NumericDomainError("intermolecular force needs h > 0");
    const double h3 = h * h * h;
    const double h4 = h3 * h;
    const double h9 = h3 * h3 * h3;
    return g.r * R *
           (-A_ham / (6.0 * pi * h3) + g.B_const / (45.0 * pi * h9) -
            pi * pi * c * hbar / (240.0 * h4));
}

SpinLimits spin_limits(const TaperGeometry& g, double R) {
    SpinLimits s;
    s.varrho = 1.0 / gap_integral(g.r, g.h);
    const double x = 4.0 * g.L * g.h / (g.L * g.L + 4.0 * g.h * g.h);
    s.Lambda = x * x * x;
    const double scale = s.varrho * pi * g.r * g.r / (g.mu_air * std::pow(R, 2.5));
    s.Omega0 = scale * g.E_mod / kLimit0;
    s.Omega1 = s.Omega0 * s.Lambda;
    s.Omega2 = scale * g.Upsilon / kLimit2 * std::sqrt(6.0 * g.Upsilon / g.E_mod);
    s.Omega_max = std::min({s.Omega0, s.Omega1, s.Omega2});
    return s;
}

double breathing_ratio(double q_s, double x_zp, double d) {
    if (!(d > 0.0)) throw NumericDomainError("breathing ratio needs d > 0");
    return q_s * x_zp / d;
}

bool check_rotation_limit(double Omega, const SpinLimits& limits, LimitPolicy policy) {
    const bool exceeded = std::abs(Omega) > limits.Omega_max;
    if (exceeded && policy == LimitPolicy::reject) {
        throw InvalidParameter("Omega", "rotation speed exceeds the aeromechanical limit Omega_max = " +
                                            std::to_string(limits.Omega_max));
    }
    return exceeded;
}

}  // namespace spinom::aero
