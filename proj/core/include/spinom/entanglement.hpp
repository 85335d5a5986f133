#pragma once

#include "spinom/dynamics.hpp"

#include <optional>
#include <span>
#include <vector>

namespace spinom {

/// Two-mode correlation matrix of the driven optical mode and the mechanics,
/// ordered (dX_driven, dY_driven, dq, dp), with its 2x2 blocks
///   Vp = [ A  C ; C^T  B ].
struct ReducedCM {
    Mat4 Vp = Mat4::Zero();
    Mat2 A = Mat2::Zero();
    Mat2 B = Mat2::Zero();
    Mat2 C = Mat2::Zero();
};

/// Traces out the reflected optical mode. The driven mode is always stored in
/// the first optical slot, so no direction argument is needed.
ReducedCM reduce(const Mat6& V);

/// Builds the block view of an arbitrary 4x4 two-mode matrix.
ReducedCM from_two_mode(const Mat4& Vp);

/// Sigma = det A + det B - 2 det C.
double symplectic_sigma(const ReducedCM& r);

/// Smallest symplectic eigenvalue of the partially transposed state.
/// Throws NumericDomainError when Sigma^2 - 4 det Vp is clearly negative.
double nu_minus(const ReducedCM& r);

struct EntanglementResult {
    double nu_minus = 0.5;
    double E_N = 0.0;     // nats
    double Sigma = 0.0;
    bool stable = true;
};

/// E_N = max[0, -ln(2 nu_minus)].
EntanglementResult log_negativity(const ReducedCM& r);

/// Logarithmic negativity of the driven mode and the mechanics at one drive
/// point; std::nullopt when the linearized dynamics is unstable.
std::optional<EntanglementResult> entanglement_at(const SystemParams& p, const DerivedConstants& d,
                                                  const DriveConfig& drive,
                                                  const SolverOptions& opts = {});

/// E_N(left input) - E_N(right input) at identical parameters and detuning
/// `Delta_c`; std::nullopt if either direction is unstable.
std::optional<double> entanglement_difference(const SystemParams& p, const DerivedConstants& d,
                                              DriveConfig drive, double Delta_c,
                                              const SolverOptions& opts = {});

/// Detuning-maximized E_N at one (J, Omega) grid point. E_N_max is empty when
/// no detuning on the grid was stable.
struct DetuningMaximum {
    double J = 0.0;
    double Omega = 0.0;
    std::optional<double> E_N_max;
};

struct RevivalPoint {
    double J = 0.0;
    double Omega = 0.0;
    std::optional<double> chi;
};

/// chi(J, Omega) = max E_N(J, Omega) / max E_N(0, 0) for every grid point with
/// J != 0 and Omega != 0. Throws ReferenceMissing without a (0, 0) entry.
std::vector<RevivalPoint> revival_factors(std::span<const DetuningMaximum> grid);

/// Largest chi over the grid, or std::nullopt if none is defined.
std::optional<double> max_revival_factor(std::span<const DetuningMaximum> grid);

}  // namespace spinom
