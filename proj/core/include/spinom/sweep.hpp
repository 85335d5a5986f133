#pragma once

#include "spinom/config.hpp"
#include "spinom/dynamics.hpp"
#include "spinom/entanglement.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spinom {

enum class Spacing { linear, log };

/// One swept parameter. Either {min, max, count, spacing} or an explicit list
/// of `values`. Values are expressed in `unit`: any SI unit suffix accepted by
/// parse_quantity, or "omega_m" / "kappa" for values relative to those rates.
struct GridAxis {
    std::string path;
    std::string name;   // column name; defaults to the path's field name
    std::string unit;   // empty = SI
    double min = 0.0;
    double max = 0.0;
    int count = 1;
    Spacing spacing = Spacing::linear;
    std::vector<double> values;

    std::vector<double> points() const;
    std::string column() const;
    void validate() const;
};

struct SweepSpec {
    std::string name = "custom";
    ModelConfig base{};
    std::vector<std::pair<std::string, nlohmann::json>> fixed;  // applied to base first
    std::vector<GridAxis> axes;
    /// Optional inner axis reduced by maximum E_N; each record then reports
    /// the quantities at the maximizing scan value (plus "scan_argmax").
    std::optional<GridAxis> scan;
    std::vector<Direction> directions{Direction::left_input};
    std::vector<std::string> outputs{"E_N"};
    nlohmann::json notes = nlohmann::json::object();

    void validate() const;
};

SweepSpec spec_from_json(const nlohmann::json& j, const ModelConfig& base = {});
nlohmann::json to_json(const SweepSpec& s);

/// Output quantities a sweep can record.
const std::vector<std::string>& known_outputs();

/// Everything computed at one parameter point. Stages that were not requested
/// (or could not run) are left empty.
struct PointResult {
    bool converged = false;
    int iterations = 0;
    double ss_residual = 0.0;
    bool stable = false;
    std::string error;

    double kappa = 0.0;
    double omega_m = 0.0;
    double Omega = 0.0;  // rotation speed magnitude
    std::optional<SteadyState> steady;
    std::optional<StabilityReport> stability;
    std::optional<EntanglementResult> entanglement;
    std::optional<double> dE_N;  // E_N(left) - E_N(right) at this point
    std::optional<double> lyap_residual;
    std::optional<double> min_symplectic;

    // Aerodynamic quantities at |Omega| and the configured separation.
    std::optional<double> T_air, T_int, T_tot, d, strain, phi, dF_dh, eta;
    std::optional<double> Omega_max;
    double scan_argmax = 0.0;

    /// Value of a named output; std::nullopt when not available.
    std::optional<double> value(const std::string& output) const;
};

/// Read-only view of the intermediate state of one evaluated point, for
/// inspectors that want to run their own checks.
struct PointContext {
    const ModelConfig& config;
    const DerivedConstants& derived;
    const SteadyState& steady;
    const GaussianState& gaussian;
    const EntanglementResult* entanglement;  // null when unstable
};

/// Inspectors may be called concurrently from several workers.
using PointInspector = std::function<void(const PointContext&)>;
using PointEvaluator = std::function<PointResult(const ModelConfig&, const std::vector<std::string>&)>;

/// Default evaluator: computes what `outputs` need. Errors from lower modules
/// are captured into PointResult::error.
PointResult evaluate_point(const ModelConfig& config, const std::vector<std::string>& outputs,
                           const PointInspector* inspector = nullptr);

struct ResultRecord {
    std::vector<double> axis_values;   // in axis units, same order as axes
    Direction direction = Direction::left_input;
    // Full SI parameter point.
    double P = 0.0, Delta_c = 0.0, Omega_r = 0.0, J = 0.0, T_bath = 0.0, Q = 0.0;
    bool stable = false;
    bool converged = false;
    int iterations = 0;
    double ss_residual = 0.0;
    std::string error;
    std::vector<std::optional<double>> values;  // aligned with Table::outputs

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

struct Table {
    std::vector<std::string> axis_names;
    std::vector<std::string> outputs;
    std::vector<Direction> directions;
    std::vector<ResultRecord> rows;
    nlohmann::json metadata = nlohmann::json::object();

    /// Index of `output` in `outputs`, or -1.
    int output_index(const std::string& output) const;
};

struct RunOptions {
    unsigned workers = 0;        // 0: SPINOM_WORKERS or hardware concurrency
    PointEvaluator evaluator;    // empty: evaluate_point
    PointInspector inspector;    // called for every evaluated point
};

/// Worker count from SPINOM_WORKERS, falling back to hardware concurrency.
unsigned default_workers();

/// Evaluates the Cartesian product of the axes (first axis slowest, then
/// directions in spec order). Per-point failures are recorded, never thrown.
/// Output is independent of the worker count.
Table run_sweep(const SweepSpec& spec, const RunOptions& options = {});

}  // namespace spinom
