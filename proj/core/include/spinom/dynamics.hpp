#pragma once

#include "spinom/optics.hpp"

#include <Eigen/Dense>

#include <array>

namespace spinom {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Quadrature ordering of the fluctuation vector.
enum Quadrature : int { X_driven = 0, Y_driven, X_reflected, Y_reflected, q_mech, p_mech };

/// Linearized drift matrix around the steady state `s`.
Mat6 build_drift(const SystemParams& p, const DerivedConstants& d, const SteadyState& s);

/// Diag[kappa, kappa, kappa, kappa, 0, gamma_m (2 n_m + 1)].
Mat6 build_diffusion(const SystemParams& p, const DerivedConstants& d);

/// Coefficients of det(lambda I - A) = lambda^6 + a1 lambda^5 + ... + a6,
/// stored with a[0] = 1.
using CharPoly = std::array<double, 7>;

/// Closed-form coefficients in terms of the effective detunings and couplings.
CharPoly closed_form_coefficients(const SystemParams& p, const DerivedConstants& d,
                                  const SteadyState& s);

/// Hurwitz determinants det(theta_k), k = 1..6, with theta_ln = a_{2l-n}.
std::array<double, 6> hurwitz_determinants(const CharPoly& a);

/// ln(x) for x > 0, -ln|x| for x < 0, 0 for x == 0.
double signed_log(double x);

double max_real_eigenvalue(const Mat6& A);

struct StabilityReport {
    CharPoly a{};
    std::array<double, 6> theta_dets{};
    double Theta5 = 0.0;
    double Theta6 = 0.0;
    bool rh_stable = false;
    bool eig_stable = false;
    double max_real_eig = 0.0;

    bool verdicts_agree() const { return rh_stable == eig_stable; }
};

/// Routh-Hurwitz verdict from the closed-form coefficients, plus an
/// independent eigenvalue verdict on `A`. Disagreement is reported through
/// verdicts_agree(), never resolved.
StabilityReport stability(const Mat6& A, const SystemParams& p, const DerivedConstants& d,
                          const SteadyState& s);

/// Eigenvalue-only report for a bare matrix (no closed form available).
StabilityReport eigen_stability(const Mat6& A);

/// Solves A V + V A^T = -D by vectorization (Kronecker sum, dense LU).
/// Throws UnstableSystem unless max Re eig(A) < -stability_margin.
Mat6 solve_lyapunov(const Mat6& A, const Mat6& D, double stability_margin = 0.0);

/// ||A V + V A^T + D|| / ||D|| (Frobenius).
double lyapunov_residual(const Mat6& A, const Mat6& V, const Mat6& D);

/// Symplectic eigenvalues of a three-mode correlation matrix, ascending.
std::array<double, 3> symplectic_eigenvalues(const Mat6& V);

/// Drift, diffusion and steady-state correlation matrix of the fluctuations.
struct GaussianState {
    Mat6 A = Mat6::Zero();
    Mat6 D = Mat6::Zero();
    Mat6 V = Mat6::Zero();
    bool stable = false;
    double max_real_eig = 0.0;
};

/// "Stable" means max Re eig(A) < -1e-6 kappa; V is only solved when stable
/// and left zero otherwise.
GaussianState gaussian_state(const SystemParams& p, const DerivedConstants& d,
                             const SteadyState& s);

inline constexpr double kStabilityMarginPerKappa = 1e-6;

}  // namespace spinom
