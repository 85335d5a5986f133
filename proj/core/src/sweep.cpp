#include "spinom/sweep.hpp"

#include "spinom/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <set>
#include <thread>

namespace spinom {

namespace {

bool wants(const std::vector<std::string>& outputs, std::string_view name) {
    return std::find(outputs.begin(), outputs.end(), name) != outputs.end();
}

bool wants_any(const std::vector<std::string>& outputs, std::initializer_list<std::string_view> names) {
    for (auto n : names) {
        if (wants(outputs, n)) return true;
    }
    return false;
}

std::string field_of(const std::string& path) {
    const auto dot = path.rfind('.');
    return dot == std::string::npos ? path : path.substr(dot + 1);
}

double kappa_of(const SystemParams& p) {
    return 2.0 * std::numbers::pi * p.c / p.lambda / p.Q;
}

// Axis value in axis units -> SI, relative units resolved against `c` as it
// stands when the axis is applied.
double to_si(const GridAxis& axis, double v, const ModelConfig& c) {
    if (axis.unit.empty()) return v;
    if (axis.unit == "omega_m") return v * c.params.omega_m;
    if (axis.unit == "kappa") return v * kappa_of(c.params);
    return v * unit_factor(axis.unit);
}

void apply_axis(ModelConfig& c, const GridAxis& axis, double v) {
    apply_setting(c, axis.path, to_si(axis, v, c));
}

Spacing spacing_from_string(const std::string& s) {
    if (s == "linear") return Spacing::linear;
    if (s == "log") return Spacing::log;
    throw ConfigError("unknown grid spacing '" + s + "' (expected linear or log)");
}

GridAxis axis_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("grid axis must be a JSON object");
    GridAxis a;
    for (const auto& [key, v] : j.items()) {
        try {
            if (key == "path") a.path = v.get<std::string>();
            else if (key == "name") a.name = v.get<std::string>();
            else if (key == "unit") a.unit = v.get<std::string>();
            else if (key == "min") a.min = v.get<double>();
            else if (key == "max") a.max = v.get<double>();
            else if (key == "count") a.count = v.get<int>();
            else if (key == "spacing") a.spacing = spacing_from_string(v.get<std::string>());
            else if (key == "values") a.values = v.get<std::vector<double>>();
            else throw ConfigError("unknown grid axis field '" + key + "'");
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("grid axis field '" + key + "': " + e.what());
        }
    }
    if (a.path.empty()) throw ConfigError("grid axis needs a 'path'");
    a.path = resolve_path(a.path);
    if (!a.values.empty()) a.count = static_cast<int>(a.values.size());
    return a;
}

nlohmann::json axis_to_json(const GridAxis& a) {
    nlohmann::json j{{"path", a.path}, {"name", a.column()}, {"unit", a.unit}};
    if (a.values.empty()) {
        j["min"] = a.min;
        j["max"] = a.max;
        j["count"] = a.count;
        j["spacing"] = a.spacing == Spacing::log ? "log" : "linear";
    } else {
        j["values"] = a.values;
    }
    return j;
}

std::optional<double> flag(bool b) { return b ? 1.0 : 0.0; }

}  // namespace

std::vector<double> GridAxis::points() const {
    if (!values.empty()) return values;
    std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
    if (count == 1) {
        out[0] = min;
        return out;
    }
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        if (spacing == Spacing::linear) {
            out[i] = min + (max - min) * t;
        } else {
            out[i] = std::exp(std::log(min) + (std::log(max) - std::log(min)) * t);
        }
    }
    if (count > 1) {
        out.front() = min;
        out.back() = max;
    }
    return out;
}

std::string GridAxis::column() const {
    if (!name.empty()) return name;
    const std::string f = field_of(path);
    return unit.empty() ? f : f + "[" + unit + "]";
}

void GridAxis::validate() const {
    resolve_path(path);
    if (!values.empty()) {
        for (double v : values) {
            if (!std::isfinite(v)) throw ConfigError("axis '" + path + "' has a non-finite value");
        }
        return;
    }
    if (count < 1) throw ConfigError("axis '" + path + "' needs count >= 1");
    if (!std::isfinite(min) || !std::isfinite(max)) {
        throw ConfigError("axis '" + path + "' needs finite min and max");
    }
    if (spacing == Spacing::log && (min <= 0.0 || max <= 0.0)) {
        throw ConfigError("log-spaced axis '" + path + "' needs positive bounds");
    }
    if (!unit.empty() && unit != "omega_m" && unit != "kappa") unit_factor(unit);
}

void SweepSpec::validate() const {
    std::set<std::string> seen;
    for (const auto& a : axes) {
        a.validate();
        if (!seen.insert(a.path).second) throw ConfigError("axis '" + a.path + "' appears twice");
    }
    if (scan) {
        scan->validate();
        if (seen.count(scan->path)) throw ConfigError("scan axis '" + scan->path + "' is also a grid axis");
    }
    for (const auto& [path, v] : fixed) resolve_path(path);
    if (directions.empty()) throw ConfigError("sweep needs at least one direction");
    if (outputs.empty()) throw ConfigError("sweep needs at least one output");
    for (const auto& o : outputs) {
        if (!wants(known_outputs(), o)) throw ConfigError("unknown output '" + o + "'");
    }
}

SweepSpec spec_from_json(const nlohmann::json& j, const ModelConfig& base) {
    if (!j.is_object()) throw ConfigError("sweep spec must be a JSON object");
    SweepSpec s;
    s.base = base;
    for (const auto& [key, v] : j.items()) {
        if (key == "name") {
            if (!v.is_string()) throw ConfigError("'name' must be a string");
            s.name = v.get<std::string>();
        } else if (key == "base") {
            s.base = config_from_json(v, s.base);
        } else if (key == "fixed") {
            if (!v.is_object()) throw ConfigError("'fixed' must be an object of path: value");
            for (const auto& [path, x] : v.items()) s.fixed.emplace_back(resolve_path(path), x);
        } else if (key == "axes") {
            if (!v.is_array()) throw ConfigError("'axes' must be an array");
            for (const auto& a : v) s.axes.push_back(axis_from_json(a));
        } else if (key == "scan") {
            if (v.is_null()) s.scan.reset();
            else s.scan = axis_from_json(v);
        } else if (key == "directions") {
            if (!v.is_array()) throw ConfigError("'directions' must be an array");
            s.directions.clear();
            for (const auto& d : v) {
                if (!d.is_string()) throw ConfigError("directions must be strings");
                s.directions.push_back(direction_from_string(d.get<std::string>()));
            }
        } else if (key == "outputs") {
            if (!v.is_array()) throw ConfigError("'outputs' must be an array");
            s.outputs.clear();
            for (const auto& o : v) {
                if (!o.is_string()) throw ConfigError("outputs must be strings");
                s.outputs.push_back(o.get<std::string>());
            }
        } else if (key == "notes") {
            s.notes = v;
        } else {
            throw ConfigError("unknown sweep spec field '" + key + "'");
        }
    }
    s.validate();
    return s;
}

nlohmann::json to_json(const SweepSpec& s) {
    nlohmann::json j;
    j["name"] = s.name;
    j["base"] = to_json(s.base);
    nlohmann::json fixed = nlohmann::json::object();
    for (const auto& [path, v] : s.fixed) fixed[path] = v;
    j["fixed"] = fixed;
    j["axes"] = nlohmann::json::array();
    for (const auto& a : s.axes) j["axes"].push_back(axis_to_json(a));
    if (s.scan) j["scan"] = axis_to_json(*s.scan);
    j["directions"] = nlohmann::json::array();
    for (auto d : s.directions) j["directions"].push_back(std::string(to_string(d)));
    j["outputs"] = s.outputs;
    j["notes"] = s.notes;
    return j;
}

const std::vector<std::string>& known_outputs() {
    static const std::vector<std::string> names{
        "E_N", "dE_N", "nu_minus", "Sigma",
        "N", "N_reflected", "G_abs", "G_reflected_abs", "q_s",
        "Delta_tilde", "Delta_tilde_reflected",
        "Theta1", "Theta2", "Theta3", "Theta4", "Theta5", "Theta6",
        "rh_stable", "eig_stable", "max_real_eig",
        "lyap_residual", "min_symplectic", "ss_residual", "iterations",
        "T_air", "T_int", "T_tot", "T_ratio", "d", "strain", "phi", "dF_dh", "eta",
        "Omega_max", "over_limit", "scan_argmax",
    };
    return names;
}

std::optional<double> PointResult::value(const std::string& o) const {
    const bool have_ent = entanglement.has_value();
    if (o == "E_N") return have_ent ? std::optional(entanglement->E_N) : std::nullopt;
    if (o == "nu_minus") return have_ent ? std::optional(entanglement->nu_minus) : std::nullopt;
    if (o == "Sigma") return have_ent ? std::optional(entanglement->Sigma) : std::nullopt;
    if (o == "dE_N") return dE_N;
    if (o == "lyap_residual") return lyap_residual;
    if (o == "min_symplectic") return min_symplectic;
    if (o == "ss_residual") return steady ? std::optional(ss_residual) : std::nullopt;
    if (o == "iterations") return static_cast<double>(iterations);
    if (o == "scan_argmax") return scan_argmax;
    if (steady) {
        if (o == "N") return steady->N_driven;
        if (o == "N_reflected") return steady->N_reflected;
        if (o == "G_abs") return std::abs(steady->G_driven) / omega_m;
        if (o == "G_reflected_abs") return std::abs(steady->G_reflected) / omega_m;
        if (o == "q_s") return steady->q_s;
        if (o == "Delta_tilde") return steady->Delta_tilde_driven;
        if (o == "Delta_tilde_reflected") return steady->Delta_tilde_reflected;
    }
    if (stability) {
        if (o.size() == 6 && o.starts_with("Theta") && o[5] >= '1' && o[5] <= '6') {
            return signed_log(stability->theta_dets[o[5] - '1']);
        }
        if (o == "rh_stable") return flag(stability->rh_stable);
        if (o == "eig_stable") return flag(stability->eig_stable);
        if (o == "max_real_eig") return stability->max_real_eig;
    }
    if (o == "T_air") return T_air;
    if (o == "T_int") return T_int;
    if (o == "T_tot") return T_tot;
    if (o == "T_ratio") {
        if (T_air && T_int && *T_air != 0.0) return std::abs(*T_int) / *T_air;
        return std::nullopt;
    }
    if (o == "d") return d;
    if (o == "strain") return strain;
    if (o == "phi") return phi;
    if (o == "dF_dh") return dF_dh;
    if (o == "eta") return eta;
    if (o == "Omega_max") return Omega_max;
    if (o == "over_limit") {
        if (!Omega_max) return std::nullopt;
        return flag(Omega > *Omega_max);
    }
    return std::nullopt;
}

namespace {

struct OpticalStage {
    SteadyState steady;
    GaussianState gaussian;
    std::optional<EntanglementResult> ent;
};

OpticalStage optical_stage(const SystemParams& p, const DerivedConstants& d, const DriveConfig& drive,
                           const SolverOptions& opts) {
    OpticalStage st;
    st.steady = steady_state(p, d, drive, opts);
    st.gaussian = gaussian_state(p, d, st.steady);
    if (st.gaussian.stable) st.ent = log_negativity(reduce(st.gaussian.V));
    return st;
}

}  // namespace

PointResult evaluate_point(const ModelConfig& config, const std::vector<std::string>& outputs,
                           const PointInspector* inspector) {
    PointResult r;
    try {
        config.drive.validate();
        const DerivedConstants dc = derive_constants(config.params);
        r.kappa = dc.kappa;
        r.omega_m = config.params.omega_m;
        r.Omega = config.drive.Omega;

        const bool need_limits = config.omega_limit == aero::LimitPolicy::reject ||
                                 wants_any(outputs, {"Omega_max", "over_limit"});
        const bool need_aero =
            wants_any(outputs, {"T_air", "T_int", "T_tot", "T_ratio", "d", "strain", "phi", "dF_dh", "eta"});
        if (need_limits || need_aero) config.geometry.validate();
        if (need_limits) {
            const auto lim = aero::spin_limits(config.geometry, config.params.R);
            r.Omega_max = lim.Omega_max;
            aero::check_rotation_limit(config.drive.Omega, lim, config.omega_limit);
        }
        if (need_aero) {
            const auto& g = config.geometry;
            const double R = config.params.R;
            r.T_air = aero::air_pressure(g, R, config.drive.Omega);
            const double A_ham = aero::hamaker_constant(g, config.params.T_bath, config.params.hbar,
                                                        config.params.k_B);
            r.T_int = aero::intermolecular_force(g, R, A_ham, g.h, config.params.hbar, config.params.c);
            r.T_tot = *r.T_air + *r.T_int;
            if (*r.T_air > 0.0) {
                const auto eq = aero::equilibrium_displacement(*r.T_air, g);
                r.d = eq.d;
                r.strain = eq.strain;
                r.phi = eq.phi;
                r.dF_dh = aero::elastic_restoring_slope(g, eq.d);
            }
        }

        OpticalStage st;
        try {
            st = optical_stage(config.params, dc, config.drive, config.solver);
        } catch (const ConvergenceError& e) {
            r.converged = false;
            r.iterations = e.iterations();
            r.ss_residual = e.residual();
            r.error = e.what();
            return r;
        }
        r.steady = st.steady;
        r.converged = st.steady.converged;
        r.iterations = st.steady.iterations;
        r.ss_residual = st.steady.residual;
        r.stable = st.gaussian.stable;

        if (wants_any(outputs, {"Theta1", "Theta2", "Theta3", "Theta4", "Theta5", "Theta6", "rh_stable",
                                "eig_stable", "max_real_eig"})) {
            r.stability = stability(st.gaussian.A, config.params, dc, st.steady);
        }
        if (r.d && *r.d > 0.0) {
            r.eta = aero::breathing_ratio(st.steady.q_s, dc.x_zp, *r.d);
        }
        if (st.gaussian.stable) {
            r.entanglement = st.ent;
            if (wants(outputs, "lyap_residual")) {
                r.lyap_residual = lyapunov_residual(st.gaussian.A, st.gaussian.V, st.gaussian.D);
            }
            if (wants(outputs, "min_symplectic")) {
                r.min_symplectic = symplectic_eigenvalues(st.gaussian.V)[0];
            }
        }
        if (wants(outputs, "dE_N") && st.ent) {
            DriveConfig mirror = config.drive;
            mirror.direction = config.drive.direction == Direction::left_input ? Direction::right_input
                                                                                : Direction::left_input;
            const OpticalStage other = optical_stage(config.params, dc, mirror, config.solver);
            if (other.ent) {
                const double here = st.ent->E_N;
                const double there = other.ent->E_N;
                r.dE_N = config.drive.direction == Direction::left_input ? here - there : there - here;
            }
        }
        if (inspector && *inspector) {
            const EntanglementResult* ent = st.ent ? &*st.ent : nullptr;
            (*inspector)(PointContext{config, dc, st.steady, st.gaussian, ent});
        }
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

int Table::output_index(const std::string& output) const {
    const auto it = std::find(outputs.begin(), outputs.end(), output);
    return it == outputs.end() ? -1 : static_cast<int>(it - outputs.begin());
}

unsigned default_workers() {
    if (const char* env = std::getenv("SPINOM_WORKERS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

ResultRecord make_record(const ModelConfig& c, const PointResult& pr, const std::vector<std::string>& outputs) {
    ResultRecord rec;
    rec.direction = c.drive.direction;
    rec.P = c.drive.P;
    rec.Delta_c = c.drive.Delta_c;
    rec.Omega_r = c.drive.signed_rotation();
    rec.J = c.params.J;
    rec.T_bath = c.params.T_bath;
    rec.Q = c.params.Q;
    rec.stable = pr.stable;
    rec.converged = pr.converged;
    rec.iterations = pr.iterations;
    rec.ss_residual = pr.ss_residual;
    rec.error = pr.error;
    rec.values.reserve(outputs.size());
    for (const auto& o : outputs) rec.values.push_back(pr.value(o));
    return rec;
}

ResultRecord evaluate_job(const SweepSpec& spec, const ModelConfig& base,
                          const std::vector<std::vector<double>>& grids,
                          const std::vector<double>& scan_points, std::size_t point, Direction dir,
                          const PointEvaluator& evaluator, const PointInspector* inspector) {
    std::vector<double> axis_values(grids.size());
    std::size_t rem = point;
    for (std::size_t k = grids.size(); k-- > 0;) {
        axis_values[k] = grids[k][rem % grids[k].size()];
        rem /= grids[k].size();
    }

    ModelConfig c = base;
    c.drive.direction = dir;
    auto eval = [&](const ModelConfig& cfg) {
        if (evaluator) return evaluator(cfg, spec.outputs);
        return evaluate_point(cfg, spec.outputs, inspector);
    };

    ResultRecord rec;
    try {
        for (std::size_t k = 0; k < grids.size(); ++k) apply_axis(c, spec.axes[k], axis_values[k]);
        if (!spec.scan) {
            rec = make_record(c, eval(c), spec.outputs);
        } else {
            // Reduce the scan by maximum E_N; the reported record is the full
            // evaluation at the maximizing scan value.
            std::optional<std::size_t> best;
            double best_E = -1.0;
            static const std::vector<std::string> only_E{"E_N"};
            for (std::size_t i = 0; i < scan_points.size(); ++i) {
                ModelConfig sc = c;
                apply_axis(sc, *spec.scan, scan_points[i]);
                const PointResult pr = evaluator ? evaluator(sc, only_E) : evaluate_point(sc, only_E, inspector);
                const auto e = pr.value("E_N");
                if (e && *e > best_E) {
                    best_E = *e;
                    best = i;
                }
            }
            if (best) {
                ModelConfig sc = c;
                apply_axis(sc, *spec.scan, scan_points[*best]);
                PointResult pr = eval(sc);
                pr.scan_argmax = scan_points[*best];
                rec = make_record(sc, pr, spec.outputs);
            } else {
                rec = make_record(c, PointResult{}, spec.outputs);
                rec.error = "no stable point along the scan axis";
            }
        }
    } catch (const std::exception& e) {
        rec = make_record(c, PointResult{}, spec.outputs);
        rec.error = e.what();
    }
    rec.axis_values = std::move(axis_values);
    rec.direction = dir;
    return rec;
}

}  // namespace

Table run_sweep(const SweepSpec& spec, const RunOptions& options) {
    spec.validate();

    ModelConfig base = spec.base;
    for (const auto& [path, v] : spec.fixed) apply_setting(base, path, v);

    std::vector<std::vector<double>> grids;
    std::size_t n_points = 1;
    for (const auto& a : spec.axes) {
        grids.push_back(a.points());
        n_points *= grids.back().size();
    }
    const std::vector<double> scan_points = spec.scan ? spec.scan->points() : std::vector<double>{};

    Table table;
    for (const auto& a : spec.axes) table.axis_names.push_back(a.column());
    table.outputs = spec.outputs;
    table.directions = spec.directions;
    table.metadata = {
        {"artifact", "spinom"},
        {"version", SPINOM_VERSION},
        {"spec", to_json(spec)},
        {"rows", n_points * spec.directions.size()},
    };

    const std::size_t n_dirs = spec.directions.size();
    const std::size_t n_jobs = n_points * n_dirs;
    table.rows.resize(n_jobs);

    const PointInspector* inspector = options.inspector ? &options.inspector : nullptr;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t j; (j = next.fetch_add(1)) < n_jobs;) {
            table.rows[j] = evaluate_job(spec, base, grids, scan_points, j / n_dirs,
                                         spec.directions[j % n_dirs], options.evaluator, inspector);
        }
    };

    unsigned workers = options.workers ? options.workers : default_workers();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n_jobs, 1)));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return table;
}

}  // namespace spinom
