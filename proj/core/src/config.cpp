#include "spinom/config.hpp"

#include "spinom/errors.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace spinom {

namespace {

using FieldList = std::vector<std::string_view>;

const std::array<std::pair<std::string_view, FieldList>, 5>& sections() {
    static const std::array<std::pair<std::string_view, FieldList>, 5> table{{
        {"params", {"n", "dn_dlambda", "m", "R", "lambda", "Q", "omega_m", "gamma_m", "T_bath",
                    "J", "hbar", "k_B", "c"}},
        {"drive", {"direction", "P", "Delta_c", "Omega", "rotation_sense", "Omega_r"}},
        {"geometry", {"r", "L", "h0", "h", "E_mod", "Upsilon", "mu_air", "eps0", "eps1", "eps2",
                      "n0", "n1", "n2", "B_const", "nu_e", "nu_e_cyclic"}},
        {"solver", {"damping", "max_iterations", "tolerance", "damping_retries"}},
        {"", {"omega_limit"}},
    }};
    return table;
}

std::string_view to_string(aero::LimitPolicy p) {
    switch (p) {
        case aero::LimitPolicy::ignore: return "ignore";
        case aero::LimitPolicy::warn: return "warn";
        case aero::LimitPolicy::reject: return "reject";
    }
    return "warn";
}

aero::LimitPolicy limit_policy_from_string(std::string_view s) {
    if (s == "ignore") return aero::LimitPolicy::ignore;
    if (s == "warn") return aero::LimitPolicy::warn;
    if (s == "reject") return aero::LimitPolicy::reject;
    throw ConfigError("unknown omega_limit policy '" + std::string(s) +
                      "' (expected ignore, warn or reject)");
}

double number_of(const nlohmann::json& v, std::string_view path) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_quantity(v.get<std::string>());
    throw ConfigError("'" + std::string(path) + "' must be a number or a quantity string");
}

std::string text_of(const nlohmann::json& v, std::string_view path) {
    if (!v.is_string()) throw ConfigError("'" + std::string(path) + "' must be a string");
    return v.get<std::string>();
}

void apply_drive(DriveConfig& d, std::string_view field, const nlohmann::json& v) {
    const std::string path = "drive." + std::string(field);
    if (field == "direction") d.direction = direction_from_string(text_of(v, path));
    else if (field == "rotation_sense") d.rotation_sense = rotation_sense_from_string(text_of(v, path));
    else if (field == "P") d.P = number_of(v, path);
    else if (field == "Delta_c") d.Delta_c = number_of(v, path);
    else if (field == "Omega") d.Omega = number_of(v, path);
    else if (field == "Omega_r") d.set_signed_rotation(number_of(v, path));
    else throw ConfigError("unknown drive field '" + std::string(field) + "'");
}

void apply_solver(SolverOptions& s, std::string_view field, const nlohmann::json& v) {
    const std::string path = "solver." + std::string(field);
    if (field == "damping") s.damping = number_of(v, path);
    else if (field == "tolerance") s.tolerance = number_of(v, path);
    else if (field == "max_iterations") {
        const double x = number_of(v, path);
        if (!(x >= 1.0) || x > 1e9 || x != std::floor(x)) {
            throw ConfigError("solver.max_iterations must be a positive integer");
        }
        s.max_iterations = static_cast<int>(x);
    } else if (field == "damping_retries") {
        const double x = number_of(v, path);
        if (!(x >= 0.0) || x > 60 || x != std::floor(x)) {
            throw ConfigError("solver.damping_retries must be an integer in [0, 60]");
        }
        s.damping_retries = static_cast<int>(x);
    } else {
        throw ConfigError("unknown solver field '" + std::string(field) + "'");
    }
}

void apply_resolved(ModelConfig& c, const std::string& path, const nlohmann::json& v) {
    const auto dot = path.find('.');
    if (dot == std::string::npos) {
        c.omega_limit = limit_policy_from_string(text_of(v, path));
        return;
    }
    const std::string section = path.substr(0, dot);
    const std::string field = path.substr(dot + 1);
    if (section == "params") c.params = params_from_json({{field, v}}, c.params);
    else if (section == "geometry") c.geometry = aero::geometry_from_json({{field, v}}, c.geometry);
    else if (section == "drive") apply_drive(c.drive, field, v);
    else apply_solver(c.solver, field, v);
}

void require_object(const nlohmann::json& j, const char* what) {
    if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
}

}  // namespace

std::string resolve_path(std::string_view path) {
    const auto dot = path.find('.');
    if (dot != std::string_view::npos) {
        const auto section = path.substr(0, dot);
        const auto field = path.substr(dot + 1);
        for (const auto& [name, fields] : sections()) {
            if (name.empty() || name != section) continue;
            for (auto f : fields) {
                if (f == field) return std::string(path);
            }
            throw ConfigError("unknown field '" + std::string(field) + "' in section '" +
                              std::string(section) + "'");
        }
        throw ConfigError("unknown config section '" + std::string(section) + "'");
    }
    std::string found;
    for (const auto& [name, fields] : sections()) {
        for (auto f : fields) {
            if (f != path) continue;
            const std::string full = name.empty() ? std::string(f) : std::string(name) + "." + std::string(f);
            if (!found.empty()) {
                throw ConfigError("ambiguous parameter '" + std::string(path) + "': " + found +
                                  " or " + full);
            }
            found = full;
        }
    }
    if (found.empty()) throw ConfigError("unknown parameter '" + std::string(path) + "'");
    return found;
}

ModelConfig config_from_json(const nlohmann::json& j, ModelConfig base) {
    require_object(j, "config");
    for (const auto& [key, v] : j.items()) {
        if (key == "params") {
            base.params = params_from_json(v, base.params);
        } else if (key == "geometry") {
            base.geometry = aero::geometry_from_json(v, base.geometry);
        } else if (key == "drive") {
            require_object(v, "drive");
            // Omega_r depends on the direction, so apply it last.
            for (const auto& [f, x] : v.items()) {
                if (f != "Omega_r") apply_drive(base.drive, f, x);
            }
            if (v.contains("Omega_r")) apply_drive(base.drive, "Omega_r", v.at("Omega_r"));
        } else if (key == "solver") {
            require_object(v, "solver");
            for (const auto& [f, x] : v.items()) apply_solver(base.solver, f, x);
        } else if (key == "omega_limit") {
            base.omega_limit = limit_policy_from_string(text_of(v, key));
        } else {
            throw ConfigError("unknown config section '" + key + "'");
        }
    }
    return base;
}

nlohmann::json to_json(const ModelConfig& c) {
    return {
        {"params", to_json(c.params)},
        {"drive",
         {{"direction", std::string(to_string(c.drive.direction))},
          {"P", c.drive.P},
          {"Delta_c", c.drive.Delta_c},
          {"Omega", c.drive.Omega},
          {"rotation_sense", std::string(to_string(c.drive.rotation_sense))}}},
        {"geometry", aero::to_json(c.geometry)},
        {"solver",
         {{"damping", c.solver.damping},
          {"max_iterations", c.solver.max_iterations},
          {"tolerance", c.solver.tolerance},
          {"damping_retries", c.solver.damping_retries}}},
        {"omega_limit", std::string(to_string(c.omega_limit))},
    };
}

ModelConfig load_config_file(const std::filesystem::path& path, ModelConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path.string() + "': " + e.what());
    }
    return config_from_json(j, std::move(base));
}

void apply_setting(ModelConfig& c, std::string_view path, const nlohmann::json& value) {
    apply_resolved(c, resolve_path(path), value);
}

void apply_setting(ModelConfig& c, std::string_view path, double value) {
    apply_setting(c, path, nlohmann::json(value));
}

void apply_setting(ModelConfig& c, std::string_view path, std::string_view text) {
    if (text == "true" || text == "false") {
        apply_setting(c, path, nlohmann::json(text == "true"));
    } else {
        apply_setting(c, path, nlohmann::json(std::string(text)));
    }
}

void apply_override(ModelConfig& c, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == assignment.size()) {
        throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
    }
    apply_setting(c, assignment.substr(0, eq), assignment.substr(eq + 1));
}

}  // namespace spinom
