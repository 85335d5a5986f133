#pragma once

// Independent numerical routes used to cross-check the production code.
// Nothing in the core library depends on these.

#include "spinom/dynamics.hpp"

#include <Eigen/Dense>

namespace spinom::oracle {

using Vec6 = Eigen::Matrix<double, 6, 1>;

/// V = int_0^horizon e^{A t} D e^{A^T t} dt by composite 8-point
/// Gauss-Legendre panels of width `step`. Throws UnstableSystem if A is not
/// stable.
Mat6 lyapunov_quadrature(const Mat6& A, const Mat6& D, double horizon, double step);

/// Picks the horizon (>= 20 slowest decay times) and the step (1/64 of the
/// fastest time scale) automatically.
Mat6 lyapunov_quadrature(const Mat6& A, const Mat6& D);

/// Deterministic mean-field right-hand side in quadrature variables
/// (X_driven, Y_driven, X_reflected, Y_reflected, q, p), noise dropped.
Vec6 mean_field_rhs(const SystemParams& p, const DerivedConstants& d, const DriveConfig& drive,
                    const Vec6& state);

/// State vector of a steady state in the same variables.
Vec6 state_vector(const SteadyState& s);

/// Central-difference Jacobian of mean_field_rhs at the steady state.
Mat6 finite_difference_drift(const SystemParams& p, const DerivedConstants& d,
                             const DriveConfig& drive, const SteadyState& s,
                             double relative_step = 1e-6);

/// Smallest modulus among the eigenvalues of i Omega Vt, Vt being Vp with
/// the sign of the second mode's momentum flipped.
double ppt_nu_minus(const Mat4& Vp);

/// Characteristic polynomial coefficients of A (a[0] = 1) by Faddeev-LeVerrier.
CharPoly faddeev_leverrier(const Mat6& A);

/// Two-mode squeezed vacuum with squeezing r (vacuum variance 1/2).
Mat4 two_mode_squeezed_vacuum(double r);

}  // namespace spinom::oracle
