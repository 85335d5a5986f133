#include "spinom/presets.hpp"

#include "spinom/errors.hpp"

#include <numbers>

namespace spinom {

namespace {

GridAxis linear(std::string path, std::string unit, double min, double max, int count) {
    GridAxis a;
    a.path = std::move(path);
    a.unit = std::move(unit);
    a.min = min;
    a.max = max;
    a.count = count;
    return a;
}

GridAxis listed(std::string path, std::string unit, std::vector<double> values) {
    GridAxis a;
    a.path = std::move(path);
    a.unit = std::move(unit);
    a.values = std::move(values);
    a.count = static_cast<int>(a.values.size());
    return a;
}

GridAxis detuning(double min, double max, int count) {
    return linear("drive.Delta_c", "omega_m", min, max, count);
}

double kappa_of(const ModelConfig& c) {
    return 2.0 * std::numbers::pi * c.params.c / c.params.lambda / c.params.Q;
}

const std::vector<Direction> both{Direction::left_input, Direction::right_input};

SweepSpec fig2(const ModelConfig& base) {
    SweepSpec s;
    s.name = "fig2";
    s.base = base;
    s.fixed = {{"params.J", 0.0}, {"drive.P", 0.02}, {"drive.Omega", 8e3}};
    s.axes = {detuning(0.0, 2.0, 401)};
    s.directions = both;
    s.outputs = {"E_N", "N", "G_abs", "nu_minus"};
    s.notes = {{"description", "E_N versus detuning for both input directions, J = 0"}};
    return s;
}

SweepSpec fig3_detuning(const ModelConfig& base, const PresetArgs& args) {
    SweepSpec s;
    s.name = "fig3_detuning";
    s.base = base;
    const double kappa = kappa_of(base);
    const double J = args.J.value_or(kappa);
    s.fixed = {{"drive.P", 0.02}};
    s.axes = {listed("params.J", "", {0.0, J}), listed("drive.Omega", "kHz", {0.0, 23.0}),
              detuning(-1.0, 4.0, 501)};
    s.directions = both;
    s.outputs = {"E_N", "N", "G_abs"};
    s.notes = {{"description", "E_N versus detuning with and without backscattering and rotation"},
               {"J", J},
               {"J_over_kappa", J / kappa},
               {"J_assumed", !args.J.has_value()}};
    return s;
}

SweepSpec fig3f_chi(const ModelConfig& base) {
    SweepSpec s;
    s.name = "fig3f_chi";
    s.base = base;
    s.fixed = {{"drive.P", 0.02}};
    s.axes = {linear("params.J", "kappa", 0.0, 2.0, 101), linear("drive.Omega", "kHz", 0.0, 40.0, 81)};
    s.scan = detuning(0.0, 4.0, 401);
    s.directions = {Direction::right_input};
    s.outputs = {"E_N", "N", "G_abs"};
    s.notes = {{"description",
                "detuning-maximized E_N over (J, Omega); chi = E_N_max / E_N_max(J = 0, Omega = 0)"},
               {"reduction", "max E_N over the scan axis, reported at scan_argmax"}};
    return s;
}

SweepSpec figS1(const ModelConfig& base) {
    SweepSpec s;
    s.name = "figS1";
    s.base = base;
    s.axes = {linear("drive.Omega", "kHz", 1.0, 40.0, 40), linear("geometry.h", "nm", 100.0, 500.0, 17)};
    s.outputs = {"T_air", "T_int", "T_tot", "T_ratio", "d", "strain", "phi", "dF_dh"};
    s.notes = {{"description", "aerodynamic lift, intermolecular force and taper deflection"}};
    return s;
}

SweepSpec figS2_stability(const ModelConfig& base) {
    SweepSpec s;
    s.name = "figS2_stability";
    s.base = base;
    s.fixed = {{"params.J", 2.0 * kappa_of(base)}, {"drive.P", 0.02}};
    s.axes = {linear("drive.Omega_r", "kHz", -30.0, 30.0, 61), detuning(0.0, 2.0, 201)};
    s.outputs = {"Theta5", "Theta6", "rh_stable", "eig_stable", "max_real_eig", "eta", "q_s", "E_N"};
    s.notes = {{"description", "Routh-Hurwitz determinants over signed rotation and detuning, J = 2 kappa"}};
    return s;
}

SweepSpec figS3_thermal(const ModelConfig& base) {
    SweepSpec s;
    s.name = "figS3_thermal";
    s.base = base;
    s.fixed = {{"params.J", 0.0}, {"drive.P", 0.02}};
    s.axes = {listed("drive.Omega", "kHz", {0.0, 8.0, 23.0}), linear("params.T_bath", "K", 0.0, 1.0, 101),
              detuning(0.0, 2.0, 201)};
    s.directions = both;
    s.outputs = {"E_N", "dE_N"};
    s.notes = {{"description", "E_N and its direction difference versus bath temperature"}};
    return s;
}

SweepSpec figS4_q(const ModelConfig& base) {
    SweepSpec s;
    s.name = "figS4_q";
    s.base = base;
    s.fixed = {{"params.J", 0.0}, {"drive.P", 0.02}, {"drive.Omega", 8e3}};
    GridAxis q = linear("params.Q", "", 1e6, 1e8, 41);
    q.spacing = Spacing::log;
    s.axes = {q, detuning(0.0, 2.0, 201)};
    s.directions = both;
    s.outputs = {"E_N", "N"};
    s.notes = {{"description", "E_N versus optical quality factor and detuning"}};
    return s;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig2",  "fig3_detuning",   "fig3f_chi",    "figS1",
                                                "figS2_stability", "figS3_thermal", "figS4_q"};
    return names;
}

SweepSpec preset(std::string_view name, const ModelConfig& base, const PresetArgs& args) {
    SweepSpec s;
    if (name == "fig2") s = fig2(base);
    else if (name == "fig3_detuning") s = fig3_detuning(base, args);
    else if (name == "fig3f_chi") s = fig3f_chi(base);
    else if (name == "figS1") s = figS1(base);
    else if (name == "figS2_stability") s = figS2_stability(base);
    else if (name == "figS3_thermal") s = figS3_thermal(base);
    else if (name == "figS4_q") s = figS4_q(base);
    else {
        std::string list;
        for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
        throw UnknownPreset("unknown preset '" + std::string(name) + "'; valid presets: " + list);
    }
    s.validate();
    return s;
}

}  // namespace spinom
