#include "spinom/emit.hpp"
#include "spinom/errors.hpp"
#include "spinom/presets.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace spinom;

namespace {

std::string header_of(const std::string& csv) { return csv.substr(0, csv.find('\n')); }

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
    return out;
}

Table small_fig2() {
    auto s = preset("fig2");
    s.axes[0].count = 21;
    return run_sweep(s);
}

}  // namespace

TEST_SUITE("emit") {
    TEST_CASE("doubles keep 17 significant digits") {
        CHECK(format_double(0.1) == "0.10000000000000001");
        CHECK(format_double(2.0) == "2");
        CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    }

    TEST_CASE("empty table is header-only CSV") {
        Table t;
        t.axis_names = {"Delta_c[omega_m]"};
        t.outputs = {"E_N"};
        t.directions = {Direction::left_input};
        std::ostringstream out;
        write_csv(t, out);
        const std::string s = out.str();
        CHECK(std::count(s.begin(), s.end(), '\n') == 1);
        CHECK(header_of(s).starts_with("Delta_c[omega_m],direction,"));
    }

    TEST_CASE("fig2 CSV is pivoted by direction") {
        const Table t = small_fig2();
        std::ostringstream out;
        write_csv(t, out);
        const auto cols = split(header_of(out.str()));
        for (const char* c : {"E_N_left", "E_N_right", "N_left", "N_right", "error_left", "Omega_r_right"}) {
            CHECK(std::find(cols.begin(), cols.end(), c) != cols.end());
        }
        const std::string s = out.str();
        CHECK(std::count(s.begin(), s.end(), '\n') == 22);
        std::istringstream lines(s);
        std::string line;
        std::getline(lines, line);
        while (std::getline(lines, line)) CHECK(split(line + ",").size() == cols.size());
    }

    TEST_CASE("JSON round trip reproduces the table") {
        Table t = small_fig2();
        t.rows[3].error = "a \"quoted\", error";
        const Table back = table_from_json(nlohmann::json::parse(table_to_json(t).dump()));
        CHECK(back.rows == t.rows);
        CHECK(back.axis_names == t.axis_names);
        CHECK(back.outputs == t.outputs);
        CHECK(back.directions == t.directions);
        CHECK(back.metadata == t.metadata);
        CHECK_THROWS_AS(table_from_json({{"rows", 1}}), ConfigError);
    }

    TEST_CASE("metadata records the grids and version") {
        const Table t = small_fig2();
        CHECK(t.metadata.at("artifact") == "spinom");
        CHECK(t.metadata.at("version").is_string());
        CHECK(t.metadata.at("spec").at("axes").at(0).at("count") == 21);
        CHECK(t.metadata.at("rows") == 42);
    }

    TEST_CASE("CSV quoting") {
        Table t;
        t.outputs = {"E_N"};
        t.directions = {Direction::left_input};
        ResultRecord r;
        r.values = {std::nullopt};
        r.error = "bad, \"worse\"";
        t.rows = {r};
        std::ostringstream out;
        write_csv(t, out);
        CHECK(out.str().find("\"bad, \"\"worse\"\"\"") != std::string::npos);
    }

    TEST_CASE("files and sidecar") {
        const auto dir = std::filesystem::temp_directory_path() / "spinom_emit_test";
        std::filesystem::create_directories(dir);
        const Table t = small_fig2();
        emit(t, Format::csv, dir / "fig2.csv");
        CHECK(std::filesystem::exists(dir / "fig2.csv"));
        CHECK(std::filesystem::exists(dir / "fig2.csv.meta.json"));
        emit(t, Format::json, dir / "fig2.json");
        std::ifstream in(dir / "fig2.json");
        CHECK(table_from_json(nlohmann::json::parse(in)).rows == t.rows);
        std::filesystem::remove_all(dir);

        try {
            emit(t, Format::csv, dir / "missing" / "x.csv");
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(e.path().find("missing") != std::string::npos);
        }
        CHECK_THROWS_AS(format_from_string("xml"), ConfigError);
    }
}
