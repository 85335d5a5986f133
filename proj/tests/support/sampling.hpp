#pragma once

#include "spinom/config.hpp"
#include "spinom/dynamics.hpp"
#include "spinom/errors.hpp"

#include <random>
#include <vector>

namespace spinom::testing {

/// Random drive points over the physically interesting range: both
/// directions, signed rotation up to 40 kHz, backscattering up to 2 kappa.
inline ModelConfig random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ModelConfig c;
    const double kappa = derive_constants(c.params).kappa;
    c.params.J = u(rng) < 0.25 ? 0.0 : 2.0 * kappa * u(rng);
    c.params.T_bath = 0.5 * u(rng);
    c.drive.direction = u(rng) < 0.5 ? Direction::left_input : Direction::right_input;
    c.drive.P = 1e-3 + 29e-3 * u(rng);
    c.drive.Delta_c = (-0.5 + 3.0 * u(rng)) * c.params.omega_m;
    c.drive.set_signed_rotation(-40e3 + 80e3 * u(rng));
    return c;
}

struct Evaluated {
    ModelConfig config;
    DerivedConstants derived;
    SteadyState steady;
    GaussianState gaussian;
};

inline Evaluated evaluate(const ModelConfig& c) {
    Evaluated e{c, derive_constants(c.params), {}, {}};
    e.steady = steady_state(c.params, e.derived, c.drive, c.solver);
    e.gaussian = gaussian_state(c.params, e.derived, e.steady);
    return e;
}

/// `count` random points whose linearized dynamics is stable.
inline std::vector<Evaluated> random_stable_points(int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::vector<Evaluated> out;
    while (static_cast<int>(out.size()) < count) {
        try {
            auto e = evaluate(random_point(rng));
            if (e.gaussian.stable) out.push_back(std::move(e));
        } catch (const ConvergenceError&) {
        }
    }
    return out;
}

inline double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).norm() / b.norm();
}

}  // namespace spinom::testing
