#include "spinom/aeromech.hpp"
#include "spinom/config.hpp"
#include "spinom/emit.hpp"
#include "spinom/entanglement.hpp"
#include "spinom/errors.hpp"
#include "spinom/presets.hpp"
#include "spinom/selftest.hpp"
#include "spinom/sweep.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

enum Exit { ok = 0, failure = 1, config_error = 2, numerical_failure = 3 };

struct Globals {
    std::string config_file;
    std::vector<std::string> overrides;
    std::string output;
    std::string format = "csv";
};

spinom::ModelConfig load(const Globals& g) {
    spinom::ModelConfig c;
    if (!g.config_file.empty()) c = spinom::load_config_file(g.config_file);
    for (const auto& o : g.overrides) spinom::apply_override(c, o);
    return c;
}

nlohmann::json complex_json(spinom::cdouble z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json steady_json(const spinom::SteadyState& s) {
    return {
        {"alpha_driven", complex_json(s.alpha_driven)},
        {"alpha_reflected", complex_json(s.alpha_reflected)},
        {"N_driven", s.N_driven},
        {"N_reflected", s.N_reflected},
        {"q_s", s.q_s},
        {"Delta_tilde_driven", s.Delta_tilde_driven},
        {"Delta_tilde_reflected", s.Delta_tilde_reflected},
        {"G_driven", complex_json(s.G_driven)},
        {"G_reflected", complex_json(s.G_reflected)},
        {"epsilon", s.epsilon},
        {"iterations", s.iterations},
        {"residual", s.residual},
    };
}

void print(const Globals& g, const nlohmann::json& j) {
    if (g.output.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(g.output);
    if (!out) throw spinom::IoError(g.output, "cannot open for writing");
    out << j.dump(2) << '\n';
}

// Applies the rotation-speed policy; under "warn" a notice goes to stderr.
void check_limit(const spinom::ModelConfig& c) {
    if (c.omega_limit == spinom::aero::LimitPolicy::ignore) return;
    c.geometry.validate();
    const auto lim = spinom::aero::spin_limits(c.geometry, c.params.R);
    if (spinom::aero::check_rotation_limit(c.drive.Omega, lim, c.omega_limit)) {
        std::cerr << "warning: Omega = " << c.drive.Omega
                  << " rad/s exceeds the aeromechanical limit " << lim.Omega_max << " rad/s\n";
    }
}

int cmd_steady(const Globals& g) {
    const auto c = load(g);
    check_limit(c);
    const auto d = spinom::derive_constants(c.params);
    const auto s = spinom::steady_state(c.params, d, c.drive, c.solver);
    print(g, {{"derived",
               {{"omega_c", d.omega_c}, {"kappa", d.kappa}, {"x_zp", d.x_zp}, {"G0", d.G0},
                {"n_m", d.n_m}, {"Q_m", d.Q_m}}},
              {"Delta_F", spinom::sagnac_shift(c.params, d, c.drive.signed_rotation())},
              {"steady_state", steady_json(s)}});
    return ok;
}

int cmd_stability(const Globals& g) {
    const auto c = load(g);
    check_limit(c);
    const auto d = spinom::derive_constants(c.params);
    const auto s = spinom::steady_state(c.params, d, c.drive, c.solver);
    const auto A = spinom::build_drift(c.params, d, s);
    const auto r = spinom::stability(A, c.params, d, s);
    nlohmann::json theta = nlohmann::json::array();
    for (double t : r.theta_dets) theta.push_back(spinom::signed_log(t));
    print(g, {{"coefficients", r.a},
              {"Theta", theta},
              {"rh_stable", r.rh_stable},
              {"eig_stable", r.eig_stable},
              {"max_real_eig", r.max_real_eig},
              {"verdicts_agree", r.verdicts_agree()}});
    return ok;
}

int cmd_entangle(const Globals& g) {
    const auto c = load(g);
    check_limit(c);
    const auto d = spinom::derive_constants(c.params);
    const auto s = spinom::steady_state(c.params, d, c.drive, c.solver);
    const auto gs = spinom::gaussian_state(c.params, d, s);
    if (!gs.stable) {
        throw spinom::UnstableSystem("linearized dynamics is unstable; E_N is undefined", gs.max_real_eig);
    }
    const auto e = spinom::log_negativity(spinom::reduce(gs.V));
    nlohmann::json j{{"direction", std::string(spinom::to_string(c.drive.direction))},
                     {"E_N", e.E_N},
                     {"nu_minus", e.nu_minus},
                     {"Sigma", e.Sigma},
                     {"lyapunov_residual", spinom::lyapunov_residual(gs.A, gs.V, gs.D)}};
    if (const auto dE = spinom::entanglement_difference(c.params, d, c.drive, c.drive.Delta_c, c.solver)) {
        j["dE_N"] = *dE;
    }
    print(g, j);
    return ok;
}

int cmd_aero(const Globals& g) {
    const auto c = load(g);
    const auto& geo = c.geometry;
    geo.validate();
    const double R = c.params.R;
    const double T_air = spinom::aero::air_pressure(geo, R, c.drive.Omega);
    const double A_ham = spinom::aero::hamaker_constant(geo, c.params.T_bath, c.params.hbar, c.params.k_B);
    const double T_int = spinom::aero::intermolecular_force(geo, R, A_ham, geo.h, c.params.hbar, c.params.c);
    const auto lim = spinom::aero::spin_limits(geo, R);
    nlohmann::json j{{"T_air", T_air},
                     {"T_int", T_int},
                     {"T_tot", T_air + T_int},
                     {"hamaker", A_ham},
                     {"limits",
                      {{"Omega0", lim.Omega0}, {"Omega1", lim.Omega1}, {"Omega2", lim.Omega2},
                       {"Omega_max", lim.Omega_max}, {"varrho", lim.varrho}, {"Lambda", lim.Lambda}}},
                     {"over_limit", spinom::aero::check_rotation_limit(c.drive.Omega, lim, c.omega_limit)}};
    if (T_air > 0.0) {
        const auto eq = spinom::aero::equilibrium_displacement(T_air, geo);
        j["equilibrium"] = {{"d", eq.d}, {"beta", eq.beta}, {"phi", eq.phi}, {"strain", eq.strain},
                            {"small_angle", eq.small_angle},
                            {"dF_dh", spinom::aero::elastic_restoring_slope(geo, eq.d)}};
        if (!eq.small_angle) std::cerr << "warning: deflection angle " << eq.phi << " is not small\n";
    }
    print(g, j);
    return ok;
}

struct SweepArgs {
    std::string preset;
    std::string spec_file;
    std::optional<double> J;
    unsigned workers = 0;
    bool list = false;
};

int cmd_sweep(const Globals& g, const SweepArgs& a) {
    if (a.list) {
        for (const auto& n : spinom::preset_names()) std::cout << n << '\n';
        return ok;
    }
    if (a.preset.empty() == a.spec_file.empty()) {
        throw spinom::ConfigError("sweep needs exactly one of --preset or --spec");
    }
    const auto base = load(g);
    spinom::SweepSpec spec;
    if (!a.preset.empty()) {
        spec = spinom::preset(a.preset, base, spinom::PresetArgs{a.J});
    } else {
        std::ifstream in(a.spec_file);
        if (!in) throw spinom::ConfigError("cannot open sweep spec '" + a.spec_file + "'");
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw spinom::ConfigError("sweep spec '" + a.spec_file + "': " + e.what());
        }
        spec = spinom::spec_from_json(j, base);
    }
    spinom::RunOptions opts;
    opts.workers = a.workers;
    const auto table = spinom::run_sweep(spec, opts);
    const auto format = spinom::format_from_string(g.format);
    if (g.output.empty()) {
        spinom::emit(table, format, std::cout);
    } else {
        spinom::emit(table, format, std::filesystem::path(g.output));
    }
    std::size_t errors = 0;
    for (const auto& r : table.rows) errors += r.error.empty() ? 0 : 1;
    if (errors) std::cerr << errors << " of " << table.rows.size() << " points reported errors\n";
    return ok;
}

int cmd_selftest() {
    bool all = true;
    for (const auto& c : spinom::run_selftest()) {
        std::printf("%s  %s  (%s)\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        all = all && c.passed;
    }
    return all ? ok : failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state entanglement in a spinning optomechanical resonator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SPINOM_CLI_VERSION);

    Globals g;
    auto add_common = [&g](CLI::App* sub) {
        sub->add_option("-c,--config", g.config_file, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("-s,--set", g.overrides, "Override a field, key=value (repeatable)");
        sub->add_option("-o,--output", g.output, "Write the result to this file instead of stdout");
    };

    auto* steady = app.add_subcommand("steady", "Mean-field steady state");
    auto* stab = app.add_subcommand("stability", "Routh-Hurwitz and eigenvalue stability");
    auto* ent = app.add_subcommand("entangle", "Logarithmic negativity at one point");
    auto* aero = app.add_subcommand("aero", "Aerodynamic forces and spin-rate limits");
    auto* sweep = app.add_subcommand("sweep", "Grid sweep from a preset or a spec file");
    auto* self = app.add_subcommand("selftest", "Derived constants and oracle cross-checks");
    for (auto* s : {steady, stab, ent, aero, sweep}) add_common(s);

    SweepArgs sa;
    sweep->add_option("--preset", sa.preset, "Named figure preset");
    sweep->add_option("--spec", sa.spec_file, "Sweep spec JSON file");
    sweep->add_option("--J", sa.J, "Backscattering rate (rad/s) for presets that take one");
    sweep->add_option("--workers", sa.workers, "Worker threads (default: SPINOM_WORKERS or all cores)");
    sweep->add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_flag("--list", sa.list, "List preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*steady) return cmd_steady(g);
        if (*stab) return cmd_stability(g);
        if (*ent) return cmd_entangle(g);
        if (*aero) return cmd_aero(g);
        if (*sweep) return cmd_sweep(g, sa);
        if (*self) return cmd_selftest();
    } catch (const spinom::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const spinom::InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const spinom::UnknownPreset& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const spinom::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    } catch (const spinom::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numerical_failure;
    }
    return failure;
}
