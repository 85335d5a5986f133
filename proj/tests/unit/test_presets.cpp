#include "spinom/errors.hpp"
#include "spinom/presets.hpp"

#include <doctest.h>

#include <cmath>

using namespace spinom;

namespace {

ModelConfig bound(const SweepSpec& s) {
    ModelConfig c = s.base;
    for (const auto& [path, v] : s.fixed) apply_setting(c, path, v);
    return c;
}

}  // namespace

TEST_SUITE("presets") {
    TEST_CASE("every named preset is valid") {
        for (const auto& n : preset_names()) {
            const auto s = preset(n);
            CHECK(s.name == n);
            CHECK_NOTHROW(s.validate());
        }
    }

    TEST_CASE("unknown presets list the valid names") {
        try {
            preset("fig9");
            FAIL("expected UnknownPreset");
        } catch (const UnknownPreset& e) {
            const std::string what = e.what();
            for (const auto& n : preset_names()) CHECK(what.find(n) != std::string::npos);
        }
    }

    TEST_CASE("fig2 bindings") {
        const auto s = preset("fig2");
        const auto c = bound(s);
        CHECK(c.drive.Omega == 8e3);
        CHECK(c.params.J == 0.0);
        CHECK(c.drive.P == 0.02);
        REQUIRE(s.axes.size() == 1);
        CHECK(s.axes[0].points().size() == 401);
        CHECK(s.axes[0].min == 0.0);
        CHECK(s.axes[0].max == 2.0);
        CHECK(s.directions.size() == 2);
    }

    TEST_CASE("figS2 uses J = 2 kappa") {
        const auto c = bound(preset("figS2_stability"));
        CHECK(c.params.J == doctest::Approx(2.0 * derive_constants(c.params).kappa));
        CHECK(c.drive.P == 0.02);
    }

    TEST_CASE("fig3f spans a (J, Omega) grid") {
        const auto s = preset("fig3f_chi");
        REQUIRE(s.axes.size() == 2);
        CHECK(s.axes[0].path == "params.J");
        CHECK(s.axes[1].path == "drive.Omega");
        CHECK(s.axes[0].points().front() == 0.0);
        CHECK(s.axes[1].points().front() == 0.0);
        REQUIRE(s.scan.has_value());
        CHECK(s.scan->path == "drive.Delta_c");
        const auto om = s.axes[1].points();
        CHECK(std::find(om.begin(), om.end(), 23.0) != om.end());
    }

    TEST_CASE("fig3 backscattering defaults to kappa and is flagged") {
        const auto s = preset("fig3_detuning");
        const double kappa = derive_constants(SystemParams{}).kappa;
        CHECK(s.notes.at("J_assumed") == true);
        CHECK(s.axes[0].values.back() == doctest::Approx(kappa));
        const auto t = preset("fig3_detuning", {}, PresetArgs{5e7});
        CHECK(t.notes.at("J_assumed") == false);
        CHECK(t.axes[0].values.back() == 5e7);
    }

    TEST_CASE("presets follow the base configuration") {
        ModelConfig base;
        base.params.T_bath = 0.3;
        const auto c = bound(preset("fig2", base));
        CHECK(c.params.T_bath == 0.3);
    }
}
