#pragma once

#include "spinom/params.hpp"

#include <complex>
#include <string>
#include <string_view>
#include <utility>

namespace spinom {

using cdouble = std::complex<double>;

enum class Direction { left_input, right_input };
enum class RotationSense { cw, ccw };

std::string_view to_string(Direction d);
std::string_view to_string(RotationSense s);
Direction direction_from_string(std::string_view s);
RotationSense rotation_sense_from_string(std::string_view s);

/// Laser drive and rotation state. The driven mode always occupies the first
/// optical slot; the input direction only enters through the sign of the
/// rotation it experiences.
struct DriveConfig {
    Direction direction = Direction::left_input;
    double P = 0.02;          // laser power, W
    double Delta_c = 0.0;     // bare detuning omega_c - omega_l, rad/s
    double Omega = 0.0;       // rotation speed magnitude, rad/s
    RotationSense rotation_sense = RotationSense::cw;

    /// +Omega for (cw, left) and (ccw, right); -Omega otherwise.
    double signed_rotation() const;

    /// Sets Omega and rotation_sense so that signed_rotation() == omega_r for
    /// the current direction.
    void set_signed_rotation(double omega_r);

    void validate() const;
};

/// Sagnac-Fizeau shift of the driven mode; antisymmetric in omega_r.
double sagnac_shift(const SystemParams& p, const DerivedConstants& d, double omega_r);

/// |epsilon| = sqrt(2 kappa P / (hbar omega_l)).
double drive_amplitude(double P, double kappa, double omega_l, double hbar = constants::hbar);

struct SolverOptions {
    double damping = 0.5;
    int max_iterations = 10000;
    double tolerance = 1e-12;
    /// Restarts from q_s = 0 with the damping halved, each with a fresh
    /// iteration budget, when an attempt hits the cap.
    int damping_retries = 8;
};

/// Mean-field steady state of both optical modes and the mechanics.
struct SteadyState {
    cdouble alpha_driven{};
    cdouble alpha_reflected{};
    double q_s = 0.0;
    double p_s = 0.0;
    double N_driven = 0.0;
    double N_reflected = 0.0;
    cdouble G_driven{};
    cdouble G_reflected{};
    double Delta_tilde_driven = 0.0;
    double Delta_tilde_reflected = 0.0;
    double epsilon = 0.0;       // drive amplitude used, 1/s
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;      // relative re-substitution residual on q_s
};

/// Damped fixed-point solve of the mean-field equations, starting from the
/// undriven state q_s = 0. Throws ConvergenceError (carrying the last iterate)
/// when every attempt hits the iteration cap.
SteadyState steady_state(const SystemParams& p, const DerivedConstants& d,
                         const DriveConfig& drive, const SolverOptions& opts = {});

/// Mean-field amplitudes for a given displacement q_s (one evaluation of the
/// steady-state map). Fills everything but the convergence bookkeeping.
SteadyState amplitudes_at(const SystemParams& p, const DerivedConstants& d,
                          const DriveConfig& drive, double q_s);

/// G_j = sqrt(2) G0 alpha_j for the driven and reflected modes.
std::pair<cdouble, cdouble> effective_couplings(const DerivedConstants& d, const SteadyState& s);

/// Largest relative mismatch when (q_s, alpha) are re-inserted into the
/// mean-field equations.
double resubstitution_residual(const SystemParams& p, const DerivedConstants& d,
                               const DriveConfig& drive, const SteadyState& s);

}  // namespace spinom
