#include "spinom/emit.hpp"
#include "spinom/errors.hpp"
#include "spinom/presets.hpp"
#include "spinom/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace spinom;

namespace {

GridAxis detuning_axis(double min, double max, int count) {
    GridAxis a;
    a.path = "drive.Delta_c";
    a.unit = "omega_m";
    a.min = min;
    a.max = max;
    a.count = count;
    return a;
}

std::string csv_of(const Table& t) {
    std::ostringstream s;
    write_csv(t, s);
    return s.str();
}

}  // namespace

TEST_SUITE("sweep") {
    TEST_CASE("grid points") {
        GridAxis a = detuning_axis(0.0, 2.0, 5);
        CHECK(a.points() == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
        a.spacing = Spacing::log;
        a.min = 1e6;
        a.max = 1e8;
        a.count = 3;
        const auto p = a.points();
        CHECK(p[0] == 1e6);
        CHECK(p[1] == doctest::Approx(1e7));
        CHECK(p[2] == 1e8);
        a.values = {3.0, 1.0};
        CHECK(a.points() == a.values);
        CHECK(detuning_axis(0, 2, 3).column() == "Delta_c[omega_m]");
    }

    TEST_CASE("invalid specs") {
        SweepSpec s;
        s.axes = {detuning_axis(0, 1, 0)};
        CHECK_THROWS_AS(s.validate(), ConfigError);
        s.axes = {detuning_axis(0, 1, 2)};
        s.outputs = {"entropy"};
        CHECK_THROWS_AS(s.validate(), ConfigError);
        s.outputs = {"E_N"};
        s.directions.clear();
        CHECK_THROWS_AS(s.validate(), ConfigError);
        s.directions = {Direction::left_input};
        s.axes = {detuning_axis(0, 1, 2), detuning_axis(0, 1, 2)};
        CHECK_THROWS_AS(s.validate(), ConfigError);
        s.axes = {detuning_axis(-1, 1, 2)};
        s.axes[0].spacing = Spacing::log;
        CHECK_THROWS_AS(s.validate(), ConfigError);
        CHECK_THROWS_AS(spec_from_json({{"axes", {{{"path", "Delta_c"}, {"step", 1}}}}}), ConfigError);
        CHECK_THROWS_AS(spec_from_json({{"colour", "red"}}), ConfigError);
    }

    TEST_CASE("spec json") {
        const nlohmann::json j = {
            {"name", "scan"},
            {"fixed", {{"Omega", 8e3}}},
            {"axes", {{{"path", "Delta_c"}, {"unit", "omega_m"}, {"min", 0.5}, {"max", 1.5}, {"count", 3}}}},
            {"directions", {"left", "right"}},
            {"outputs", {"E_N", "N"}},
        };
        const auto s = spec_from_json(j);
        CHECK(s.axes[0].path == "drive.Delta_c");
        CHECK(s.fixed[0].first == "drive.Omega");
        CHECK(s.directions.size() == 2);
        const auto back = spec_from_json(to_json(s));
        CHECK(to_json(back) == to_json(s));

        auto with_null_scan = j;
        with_null_scan["scan"] = nullptr;
        CHECK_FALSE(spec_from_json(with_null_scan).scan.has_value());
    }

    TEST_CASE("single-point sweep equals direct module calls") {
        SweepSpec s;
        s.fixed = {{"drive.Omega", 8e3}};
        s.axes = {detuning_axis(0.4, 0.4, 1)};
        s.outputs = {"E_N", "N", "nu_minus"};
        const auto t = run_sweep(s);
        REQUIRE(t.rows.size() == 1);
        const SystemParams p;
        const auto d = derive_constants(p);
        DriveConfig drive;
        drive.Omega = 8e3;
        drive.Delta_c = 0.4 * p.omega_m;
        const auto e = entanglement_at(p, d, drive);
        const auto ss = steady_state(p, d, drive);
        REQUIRE(e.has_value());
        CHECK(t.rows[0].values[0].value() == e->E_N);
        CHECK(t.rows[0].values[1].value() == ss.N_driven);
        CHECK(t.rows[0].values[2].value() == e->nu_minus);
        CHECK(t.rows[0].Delta_c == drive.Delta_c);
        CHECK(t.rows[0].Omega_r == 8e3);
        CHECK(t.rows[0].stable);
    }

    TEST_CASE("row order is lexicographic over axes then directions") {
        SweepSpec s;
        GridAxis om;
        om.path = "drive.Omega";
        om.unit = "kHz";
        om.values = {0.0, 8.0};
        s.axes = {om, detuning_axis(0.5, 1.0, 3)};
        s.directions = {Direction::left_input, Direction::right_input};
        const auto t = run_sweep(s);
        REQUIRE(t.rows.size() == 12);
        CHECK(t.rows[0].axis_values == std::vector<double>{0.0, 0.5});
        CHECK(t.rows[1].axis_values == std::vector<double>{0.0, 0.5});
        CHECK(t.rows[1].direction == Direction::right_input);
        CHECK(t.rows[2].axis_values == std::vector<double>{0.0, 0.75});
        CHECK(t.rows[6].axis_values == std::vector<double>{8.0, 0.5});
        CHECK(t.rows[7].Omega_r == -8e3);
    }

    TEST_CASE("stationary sweep is reciprocal") {
        SweepSpec s;
        s.fixed = {{"params.J", 3e7}};
        s.axes = {detuning_axis(0.0, 2.0, 41)};
        s.directions = {Direction::left_input, Direction::right_input};
        const auto t = run_sweep(s);
        for (std::size_t i = 0; i < t.rows.size(); i += 2) {
            const auto& l = t.rows[i].values[0];
            const auto& r = t.rows[i + 1].values[0];
            REQUIRE(l.has_value() == r.has_value());
            if (l) CHECK(std::abs(*l - *r) <= 1e-9);
        }
    }

    TEST_CASE("unstable points carry no E_N") {
        SweepSpec s;
        s.axes = {detuning_axis(-1.0, -1.0, 1)};
        s.outputs = {"E_N", "N", "max_real_eig"};
        const auto t = run_sweep(s);
        CHECK_FALSE(t.rows[0].stable);
        CHECK_FALSE(t.rows[0].values[0].has_value());
        CHECK(t.rows[0].values[1].has_value());
        CHECK(t.rows[0].values[2].value() > 0.0);
    }

    TEST_CASE("output is independent of the worker count") {
        auto s = preset("fig2");
        s.axes[0].count = 61;
        RunOptions one, four;
        one.workers = 1;
        four.workers = 4;
        const auto a = run_sweep(s, one);
        const auto b = run_sweep(s, four);
        CHECK(a.rows == b.rows);
        CHECK(csv_of(a) == csv_of(b));
        std::ostringstream ja, jb;
        emit(a, Format::json, ja);
        emit(b, Format::json, jb);
        CHECK(ja.str() == jb.str());
    }

    TEST_CASE("fault isolation") {
        SweepSpec s;
        s.fixed = {{"drive.Omega", 8e3}};
        s.axes = {detuning_axis(0.2, 1.8, 9)};
        s.outputs = {"E_N", "N"};
        const auto clean = run_sweep(s);

        const double poisoned = 1.0 * SystemParams{}.omega_m;
        RunOptions o;
        o.evaluator = [&](const ModelConfig& c, const std::vector<std::string>& outputs) {
            if (c.drive.Delta_c == poisoned) {
                ModelConfig broken = c;
                broken.solver.max_iterations = 1;
                return evaluate_point(broken, outputs);
            }
            return evaluate_point(c, outputs);
        };
        const auto faulty = run_sweep(s, o);
        REQUIRE(faulty.rows.size() == clean.rows.size());
        int flagged = 0;
        for (std::size_t i = 0; i < clean.rows.size(); ++i) {
            if (faulty.rows[i].error.empty()) {
                CHECK(faulty.rows[i] == clean.rows[i]);
            } else {
                ++flagged;
                CHECK_FALSE(faulty.rows[i].converged);
                CHECK_FALSE(faulty.rows[i].values[0].has_value());
            }
        }
        CHECK(flagged == 1);

        o.evaluator = [&](const ModelConfig& c, const std::vector<std::string>& outputs) -> PointResult {
            if (c.drive.Delta_c == poisoned) throw std::runtime_error("injected");
            return evaluate_point(c, outputs);
        };
        const auto thrown = run_sweep(s, o);
        int errors = 0;
        for (const auto& r : thrown.rows) errors += r.error.empty() ? 0 : 1;
        CHECK(errors == 1);
        CHECK(thrown.rows[4].error == "injected");
    }

    TEST_CASE("scan reduction reports the maximizing point") {
        SweepSpec s;
        s.fixed = {{"drive.Omega", 8e3}};
        s.scan = detuning_axis(0.0, 2.0, 81);
        s.directions = {Direction::left_input, Direction::right_input};
        s.outputs = {"E_N", "scan_argmax"};
        const auto t = run_sweep(s);
        REQUIRE(t.rows.size() == 2);

        SweepSpec full = s;
        full.scan.reset();
        full.axes = {detuning_axis(0.0, 2.0, 81)};
        full.outputs = {"E_N"};
        const auto f = run_sweep(full);
        for (int dir = 0; dir < 2; ++dir) {
            double best = -1.0, at = 0.0;
            for (std::size_t i = dir; i < f.rows.size(); i += 2) {
                if (f.rows[i].values[0] && *f.rows[i].values[0] > best) {
                    best = *f.rows[i].values[0];
                    at = f.rows[i].axis_values[0];
                }
            }
            CHECK(t.rows[dir].values[0].value() == best);
            CHECK(t.rows[dir].values[1].value() == at);
        }
    }

    TEST_CASE("direction difference output") {
        SweepSpec s;
        s.fixed = {{"drive.Omega", 8e3}};
        s.axes = {detuning_axis(0.3, 0.3, 1)};
        s.directions = {Direction::left_input, Direction::right_input};
        s.outputs = {"E_N", "dE_N"};
        const auto t = run_sweep(s);
        const auto& l = t.rows[0];
        const auto& r = t.rows[1];
        REQUIRE(l.values[0]);
        const double right = r.values[0].value_or(0.0);
        if (r.values[0]) {
            CHECK(l.values[1].value() == doctest::Approx(*l.values[0] - right));
            CHECK(r.values[1].value() == l.values[1].value());
        } else {
            CHECK_FALSE(l.values[1].has_value());
        }
    }

    TEST_CASE("aerodynamic outputs") {
        SweepSpec s;
        GridAxis om;
        om.path = "drive.Omega";
        om.unit = "kHz";
        om.values = {0.0, 23.0};
        s.axes = {om};
        s.outputs = {"T_air", "T_int", "T_tot", "d", "eta", "Omega_max", "over_limit"};
        const auto t = run_sweep(s);
        CHECK(t.rows[0].values[0].value() == 0.0);
        CHECK_FALSE(t.rows[0].values[3].has_value());
        CHECK(t.rows[1].values[0].value() > 0.0);
        CHECK(t.rows[1].values[2].value() > 0.0);
        CHECK(t.rows[1].values[4].value() >= 0.0);
        CHECK(t.rows[1].values[6].value() == 0.0);
    }

    TEST_CASE("reject policy flags points above the spin limit") {
        SweepSpec s;
        s.base.omega_limit = aero::LimitPolicy::reject;
        GridAxis om;
        om.path = "drive.Omega";
        om.unit = "kHz";
        om.values = {8.0, 100.0};
        s.axes = {om, detuning_axis(1.0, 1.0, 1)};
        const auto t = run_sweep(s);
        CHECK(t.rows[0].error.empty());
        CHECK(t.rows[1].error.find("Omega_max") != std::string::npos);
    }
}
