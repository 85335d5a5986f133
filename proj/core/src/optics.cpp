#include "spinom/optics.hpp"

#include "spinom/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace spinom {

std::string_view to_string(Direction d) {
    return d == Direction::left_input ? "left" : "right";
}

std::string_view to_string(RotationSense s) {
    return s == RotationSense::cw ? "cw" : "ccw";
}

Direction direction_from_string(std::string_view s) {
    if (s == "left" || s == "left_input") return Direction::left_input;
    if (s == "right" || s == "right_input") return Direction::right_input;
    throw ConfigError("unknown direction '" + std::string(s) + "' (expected left or right)");
}

RotationSense rotation_sense_from_string(std::string_view s) {
    if (s == "cw") return RotationSense::cw;
    if (s == "ccw") return RotationSense::ccw;
    throw ConfigError("unknown rotation sense '" + std::string(s) + "' (expected cw or ccw)");
}

double DriveConfig::signed_rotation() const {
    const bool positive = (rotation_sense == RotationSense::cw) == (direction == Direction::left_input);
    return positive ? Omega : -Omega;
}

void DriveConfig::set_signed_rotation(double omega_r) {
    Omega = std::abs(omega_r);
    const bool positive = omega_r >= 0.0;
    const bool left = direction == Direction::left_input;
    rotation_sense = (positive == left) ? RotationSense::cw : RotationSense::ccw;
}

void DriveConfig::validate() const {
    if (!std::isfinite(P) || P < 0.0) throw InvalidParameter("P", "must be >= 0");
    if (!std::isfinite(Omega) || Omega < 0.0) throw InvalidParameter("Omega", "must be >= 0");
    if (!std::isfinite(Delta_c)) throw InvalidParameter("Delta_c", "must be finite");
}

double sagnac_shift(const SystemParams& p, const DerivedConstants& d, double omega_r) {
    const double dispersion = 1.0 - 1.0 / (p.n * p.n) - (p.lambda / p.n) * p.dn_dlambda;
    return omega_r * (p.n * p.R * d.omega_c / p.c) * dispersion;
}

double drive_amplitude(double P, double kappa, double omega_l, double hbar) {
    if (P <= 0.0) return 0.0;
    return std::sqrt(2.0 * kappa * P / (hbar * omega_l));
}

namespace {

struct BareDetunings {
    double driven;
    double reflected;
};

BareDetunings bare_detunings(const SystemParams& p, const DerivedConstants& d,
                             const DriveConfig& drive) {
    const double shift = sagnac_shift(p, d, drive.signed_rotation());
    return {drive.Delta_c + shift, drive.Delta_c - shift};
}

double q_map(const DerivedConstants& d, const SystemParams& p, const SteadyState& s) {
    return d.G0 / p.omega_m * (s.N_driven + s.N_reflected);
}

}  // namespace

SteadyState amplitudes_at(const SystemParams& p, const DerivedConstants& d,
                          const DriveConfig& drive, double q_s) {
    const auto bare = bare_detunings(p, d, drive);
    const double omega_l = d.omega_c - drive.Delta_c;

    SteadyState s;
    s.epsilon = drive_amplitude(drive.P, d.kappa, omega_l, p.hbar);
    s.q_s = q_s;
    s.p_s = 0.0;
    s.Delta_tilde_driven = bare.driven - d.G0 * q_s;
    s.Delta_tilde_reflected = bare.reflected - d.G0 * q_s;

    const cdouble i{0.0, 1.0};
    const cdouble lr = i * s.Delta_tilde_reflected + d.kappa;
    const cdouble ld = i * s.Delta_tilde_driven + d.kappa;
    s.alpha_driven = lr * s.epsilon / (lr * ld + p.J * p.J);
    if (p.J == 0.0) {
        s.alpha_reflected = cdouble{0.0, 0.0};
    } else {
        s.alpha_reflected = -i * p.J / lr * s.alpha_driven;
    }
    s.N_driven = std::norm(s.alpha_driven);
    s.N_reflected = std::norm(s.alpha_reflected);
    std::tie(s.G_driven, s.G_reflected) = effective_couplings(d, s);
    return s;
}

SteadyState steady_state(const SystemParams& p, const DerivedConstants& d,
                         const DriveConfig& drive, const SolverOptions& opts) {
    drive.validate();
    if (!(opts.damping > 0.0 && opts.damping <= 1.0)) {
        throw InvalidParameter("solver.damping", "must lie in (0, 1]");
    }
    if (opts.max_iterations < 1) throw InvalidParameter("solver.max_iterations", "must be >= 1");

    if (opts.damping_retries < 0) throw InvalidParameter("solver.damping_retries", "must be >= 0");

    double q = 0.0;
    double residual = 0.0;
    int total = 0;
    double beta = opts.damping;
    for (int attempt = 0; attempt <= opts.damping_retries; ++attempt, beta *= 0.5) {
        // Strong photothermal feedback can make the beta = 0.5 map overshoot
        // into a cycle; smaller steps follow the same branch from q_s = 0.
        q = 0.0;
        for (int it = 1; it <= opts.max_iterations; ++it) {
            ++total;
            const SteadyState trial = amplitudes_at(p, d, drive, q);
            const double q_next = q_map(d, p, trial);
            const double step = std::abs(q_next - q);
            residual = q_next != 0.0 ? step / std::abs(q_next) : step;
            if (step <= opts.tolerance * std::abs(q_next)) {
                SteadyState s = amplitudes_at(p, d, drive, q_next);
                s.converged = true;
                s.iterations = total;
                const double q_check = q_map(d, p, s);
                s.residual = q_next != 0.0 ? std::abs(q_check - q_next) / q_next : 0.0;
                return s;
            }
            q = (1.0 - beta) * q + beta * q_next;
        }
    }
    throw ConvergenceError("mean-field iteration did not converge in " + std::to_string(total) +
                               " iterations",
                           q, residual, total);
}

std::pair<cdouble, cdouble> effective_couplings(const DerivedConstants& d, const SteadyState& s) {
    const double scale = std::sqrt(2.0) * d.G0;
    return {scale * s.alpha_driven, scale * s.alpha_reflected};
}

double resubstitution_residual(const SystemParams& p, const DerivedConstants& d,
                               const DriveConfig& drive, const SteadyState& s) {
    const SteadyState again = amplitudes_at(p, d, drive, s.q_s);
    auto rel = [](cdouble a, cdouble b) {
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
    };
    const double q_again = q_map(d, p, again);
    const double q_rel = s.q_s != 0.0 ? std::abs(q_again - s.q_s) / std::abs(s.q_s) : std::abs(q_again);
    return std::max({rel(again.alpha_driven, s.alpha_driven),
                     rel(again.alpha_reflected, s.alpha_reflected), q_rel});
}

}  // namespace spinom
