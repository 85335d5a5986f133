#include "spinom/aeromech.hpp"
#include "spinom/errors.hpp"
#include "spinom/params.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace spinom;
using namespace spinom::aero;

namespace {

const TaperGeometry G;
const double R = SystemParams{}.R;

// Composite Simpson in s with x = r - s^2, which removes the square-root
// behaviour at x = r.
double gap_integral_simpson(double r, double h, int n = 200000) {
    const double b = std::sqrt(r);
    auto f = [&](double s) {
        const double x = r - s * s;
        return 2.0 * s * std::pow(h + r - std::sqrt(std::max(r * r - x * x, 0.0)), -1.5);
    };
    const double step = b / n;
    double sum = f(0.0) + f(b);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * step);
    return sum * step / 3.0;
}

}  // namespace

TEST_SUITE("aeromech") {
    TEST_CASE("gap integral") {
        for (double h : {50e-9, 250e-9, 1e-6}) {
            CHECK(gap_integral(G.r, h) == doctest::Approx(gap_integral_simpson(G.r, h)).epsilon(1e-8));
        }
        const double h = G.r / 1000.0;
        CHECK(gap_integral(G.r, h) == doctest::Approx(std::sqrt(2.0 * G.r) / h).epsilon(0.1));
        CHECK_THROWS_AS(gap_integral(G.r, 0.0), NumericDomainError);
    }

    TEST_CASE("air pressure is linear in Omega") {
        CHECK(air_pressure(G, R, 0.0) == 0.0);
        const double a = air_pressure(G, R, 8e3);
        CHECK(a > 0.0);
        CHECK(air_pressure(G, R, 16e3) == doctest::Approx(2.0 * a).epsilon(1e-14));
        CHECK(a == doctest::Approx(6.19 * G.mu_air * std::pow(R, 2.5) * 8e3 * gap_integral(G.r, G.h)));
    }

    TEST_CASE("equilibrium displacement") {
        const auto none = equilibrium_displacement(0.0, G);
        CHECK(none.d == 0.0);
        // beta = 1 exactly: T_air = pi r^2 E / 3.
        const double T1 = std::numbers::pi * G.r * G.r * G.E_mod / 3.0;
        CHECK(equilibrium_displacement(T1, G).d == doctest::Approx(G.L / 2.0));
        CHECK_THROWS_AS(equilibrium_displacement(1.01 * T1, G), NoEquilibrium);
        for (double T : {1e-9, 1e-6, 1e-4, 0.5 * T1}) {
            const auto e = equilibrium_displacement(T, G);
            CHECK(e.phi == doctest::Approx(1.0 / e.beta).epsilon(1e-12));
            CHECK(e.strain == doctest::Approx(e.phi * e.phi / 6.0));
            CHECK(e.d > 0.0);
            CHECK(e.d < G.L / 2.0);
        }
        CHECK(equilibrium_displacement(1e-12, G).d < equilibrium_displacement(1e-9, G).d);
    }

    TEST_CASE("displacement and strain grow with rotation at h = 250 nm") {
        double d_prev = 0.0, e_prev = 0.0;
        for (double kHz = 1.0; kHz <= 40.0; kHz += 1.0) {
            const auto e = equilibrium_displacement(air_pressure(G, R, kHz * 1e3), G);
            CHECK(e.d > d_prev);
            CHECK(e.strain > e_prev);
            d_prev = e.d;
            e_prev = e.strain;
        }
    }

    TEST_CASE("restoring slope") {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
        for (int i = 0; i < 100; ++i) CHECK(elastic_restoring_slope(G, u(rng) * G.L / 2.0) > 0.0);
        CHECK(elastic_restoring_slope(G, G.L / 2.0) == 0.0);
        const double tiny = elastic_restoring_slope(G, 1e-15);
        CHECK(tiny > 0.0);
        CHECK(tiny < 1e-6 * elastic_restoring_slope(G, G.L / 4.0));
        CHECK_THROWS_AS(elastic_restoring_slope(G, 0.0), NumericDomainError);
        CHECK_THROWS_AS(elastic_restoring_slope(G, G.L), NumericDomainError);
    }

    TEST_CASE("Hamaker constant") {
        TaperGeometry same = G;
        same.eps1 = same.eps2 = same.eps0;
        same.n1 = same.n2 = same.n0;
        CHECK(hamaker_constant(same, 0.13) == 0.0);
        const double A = hamaker_constant(G, 0.13);
        CHECK(A > 1e-20);
        CHECK(A < 1e-19);
        // The zero-frequency term is linear in T.
        const double a0 = hamaker_constant(G, 0.0);
        CHECK(hamaker_constant(G, 2.0) - a0 == doctest::Approx(2.0 * (hamaker_constant(G, 1.0) - a0)));
        TaperGeometry angular = G;
        angular.nu_e_cyclic = false;
        CHECK(hamaker_constant(angular, 0.0) == doctest::Approx(a0 / (2.0 * std::numbers::pi)));
    }

    TEST_CASE("intermolecular force") {
        const double casimir = intermolecular_force(G, R, 0.0, 250e-9);
        TaperGeometry no_b = G;
        no_b.B_const = 0.0;
        CHECK(intermolecular_force(no_b, R, 0.0, 250e-9) < 0.0);
        CHECK(std::abs(intermolecular_force(G, R, 6e-20, 1e-3)) < 1e-9 * std::abs(intermolecular_force(G, R, 6e-20, 250e-9)));
        CHECK(casimir < 0.0);
        const double A = hamaker_constant(G, 0.13);
        for (double h = 100e-9; h <= 500e-9 + 1e-12; h += 25e-9) {
            TaperGeometry g = G;
            g.h = h;
            const double Tair = air_pressure(g, R, 23e3);
            const double Tint = intermolecular_force(g, R, A, h);
            CHECK(std::abs(Tint) / Tair < 1e-3);
        }
    }

    TEST_CASE("spin limits") {
        const auto s = spin_limits(G, R);
        CHECK(s.Omega1 / s.Omega0 == doctest::Approx(s.Lambda).epsilon(1e-14));
        CHECK(s.Lambda == doctest::Approx(0.03412).epsilon(1e-3));
        const double ratio2 = 6.0 * (G.Upsilon / G.E_mod) * std::sqrt(6.0 * G.Upsilon / G.E_mod);
        CHECK(s.Omega2 / s.Omega0 == doctest::Approx(ratio2).epsilon(1e-12));
        CHECK(std::abs((s.Omega1 / s.Omega0) / (2.8 / 81.6) - 1.0) < 0.01);
        CHECK(std::abs((s.Omega2 / s.Omega0) / (49.9 / 81.6) - 1.0) < 0.01);
        CHECK(s.Omega_max == s.Omega1);
        CHECK(s.varrho == doctest::Approx(1.0 / gap_integral(G.r, G.h)));

        TaperGeometry thick = G;
        thick.mu_air = 3.0 * G.mu_air;
        const auto t = spin_limits(thick, R);
        CHECK(t.Omega1 / t.Omega0 == doctest::Approx(s.Omega1 / s.Omega0).epsilon(1e-14));
        CHECK(t.Omega2 / t.Omega0 == doctest::Approx(s.Omega2 / s.Omega0).epsilon(1e-14));
        CHECK(t.Omega0 == doctest::Approx(s.Omega0 / 3.0));
    }

    TEST_CASE("rotation limit policy") {
        const auto s = spin_limits(G, R);
        CHECK_FALSE(check_rotation_limit(0.5 * s.Omega_max, s, LimitPolicy::reject));
        CHECK(check_rotation_limit(2.0 * s.Omega_max, s, LimitPolicy::warn));
        CHECK(check_rotation_limit(2.0 * s.Omega_max, s, LimitPolicy::ignore));
        CHECK_THROWS_AS(check_rotation_limit(2.0 * s.Omega_max, s, LimitPolicy::reject), InvalidParameter);
    }

    TEST_CASE("breathing ratio") {
        CHECK(breathing_ratio(0.0, 4e-16, 1e-7) == 0.0);
        CHECK(breathing_ratio(200.0, 4e-16, 1e-7) == doctest::Approx(2.0 * breathing_ratio(100.0, 4e-16, 1e-7)));
        CHECK_THROWS_AS(breathing_ratio(1.0, 4e-16, 0.0), NumericDomainError);
    }

    TEST_CASE("geometry validation and json") {
        TaperGeometry g = G;
        g.h0 = 300e-9;
        CHECK_THROWS_AS(g.validate(), InvalidParameter);
        const auto j = geometry_from_json({{"h", "300 nm"}, {"nu_e_cyclic", false}});
        CHECK(j.h == doctest::Approx(300e-9));
        CHECK_FALSE(j.nu_e_cyclic);
        CHECK_THROWS_AS(geometry_from_json({{"width", 1.0}}), ConfigError);
        const auto back = geometry_from_json(to_json(j));
        CHECK(back.h == j.h);
        CHECK(back.nu_e_cyclic == j.nu_e_cyclic);
    }
}
