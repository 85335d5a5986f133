#include "spinom/config.hpp"
#include "spinom/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace spinom;

TEST_SUITE("config") {
    TEST_CASE("paths resolve with or without a section") {
        CHECK(resolve_path("T_bath") == "params.T_bath");
        CHECK(resolve_path("Omega") == "drive.Omega");
        CHECK(resolve_path("h") == "geometry.h");
        CHECK(resolve_path("geometry.mu_air") == "geometry.mu_air");
        CHECK(resolve_path("omega_limit") == "omega_limit");
        CHECK_THROWS_AS(resolve_path("params.Omega"), ConfigError);
        CHECK_THROWS_AS(resolve_path("bogus"), ConfigError);
        CHECK_THROWS_AS(resolve_path("optics.n"), ConfigError);
    }

    TEST_CASE("overrides") {
        ModelConfig c;
        apply_override(c, "Omega=23kHz");
        apply_override(c, "drive.direction=right");
        apply_override(c, "T_bath=0.5");
        apply_override(c, "geometry.nu_e_cyclic=false");
        apply_override(c, "solver.max_iterations=50");
        apply_override(c, "omega_limit=reject");
        CHECK(c.drive.Omega == doctest::Approx(23e3));
        CHECK(c.drive.direction == Direction::right_input);
        CHECK(c.params.T_bath == 0.5);
        CHECK_FALSE(c.geometry.nu_e_cyclic);
        CHECK(c.solver.max_iterations == 50);
        CHECK(c.omega_limit == aero::LimitPolicy::reject);
        CHECK_THROWS_AS(apply_override(c, "Omega"), ConfigError);
        CHECK_THROWS_AS(apply_override(c, "=3"), ConfigError);
        CHECK_THROWS_AS(apply_override(c, "Omega=fast"), ConfigError);
        CHECK_THROWS_AS(apply_override(c, "solver.max_iterations=2.5"), ConfigError);
        CHECK_THROWS_AS(apply_override(c, "omega_limit=maybe"), ConfigError);
    }

    TEST_CASE("signed rotation setting respects the direction") {
        ModelConfig c;
        c.drive.direction = Direction::right_input;
        apply_setting(c, "drive.Omega_r", 8e3);
        CHECK(c.drive.signed_rotation() == 8e3);
        CHECK(c.drive.rotation_sense == RotationSense::ccw);
        apply_setting(c, "Omega_r", -5e3);
        CHECK(c.drive.signed_rotation() == -5e3);
    }

    TEST_CASE("json round trip") {
        ModelConfig c;
        c.params.J = 3e7;
        c.drive.Delta_c = 5e7;
        c.drive.rotation_sense = RotationSense::ccw;
        c.geometry.h = 300e-9;
        c.solver.tolerance = 1e-13;
        c.omega_limit = aero::LimitPolicy::ignore;
        const auto back = config_from_json(to_json(c));
        CHECK(back.params.J == c.params.J);
        CHECK(back.drive.Delta_c == c.drive.Delta_c);
        CHECK(back.drive.rotation_sense == RotationSense::ccw);
        CHECK(back.geometry.h == c.geometry.h);
        CHECK(back.solver.tolerance == c.solver.tolerance);
        CHECK(back.omega_limit == aero::LimitPolicy::ignore);
        CHECK(to_json(back) == to_json(c));
    }

    TEST_CASE("config json errors") {
        CHECK_THROWS_AS(config_from_json({{"optics", nlohmann::json::object()}}), ConfigError);
        CHECK_THROWS_AS(config_from_json({{"drive", {{"speed", 1.0}}}}), ConfigError);
        CHECK_THROWS_AS(config_from_json({{"drive", {{"direction", 1.0}}}}), ConfigError);
        CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), ConfigError);
        const auto c = config_from_json({{"drive", {{"Omega_r", -8e3}, {"direction", "right"}}}});
        CHECK(c.drive.signed_rotation() == -8e3);
    }

    TEST_CASE("config files") {
        const auto path = std::filesystem::temp_directory_path() / "spinom_config_test.json";
        {
            std::ofstream out(path);
            out << R"({"params": {"T_bath": "300 mK"}, "drive": {"P": "10 mW"}})";
        }
        const auto c = load_config_file(path);
        CHECK(c.params.T_bath == doctest::Approx(0.3));
        CHECK(c.drive.P == doctest::Approx(0.01));
        {
            std::ofstream out(path);
            out << "{ not json";
        }
        CHECK_THROWS_AS(load_config_file(path), ConfigError);
        std::filesystem::remove(path);
        CHECK_THROWS_AS(load_config_file(path), ConfigError);
    }
}
