#include "spinom/entanglement.hpp"

#include "spinom/errors.hpp"

#include <algorithm>
#include <cmath>

namespace spinom {

ReducedCM from_two_mode(const Mat4& Vp) {
    ReducedCM r;
    r.Vp = Vp;
    r.A = Vp.block<2, 2>(0, 0);
    r.B = Vp.block<2, 2>(2, 2);
    r.C = Vp.block<2, 2>(0, 2);
    return r;
}

ReducedCM reduce(const Mat6& V) {
    constexpr int keep[4] = {X_driven, Y_driven, q_mech, p_mech};
    Mat4 Vp;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) Vp(i, j) = V(keep[i], keep[j]);
    return from_two_mode(Vp);
}

double symplectic_sigma(const ReducedCM& r) {
    return r.A.determinant() + r.B.determinant() - 2.0 * r.C.determinant();
}

double nu_minus(const ReducedCM& r) {
    // det V' cancels badly once nu_+ >> nu_-, so the invariants are formed in
    // extended precision.
    using Mat4L = Eigen::Matrix<long double, 4, 4>;
    const Mat4L V = r.Vp.cast<long double>();
    const long double sigma = V.block<2, 2>(0, 0).determinant() + V.block<2, 2>(2, 2).determinant() -
                              2.0L * V.block<2, 2>(0, 2).determinant();
    const long double det = V.determinant();
    long double disc = sigma * sigma - 4.0L * det;
    if (disc < -1e-12L * std::max(1.0L, sigma * sigma)) {
        throw NumericDomainError("unphysical two-mode matrix: Sigma^2 - 4 det V' < 0");
    }
    disc = std::max(disc, 0.0L);
    // nu_-^2 = (Sigma - sqrt(disc)) / 2, rewritten as 2 det / (Sigma + sqrt(disc))
    // to avoid cancellation when nu_+ >> nu_-.
    const long double root = std::sqrt(disc);
    long double nu2 = 0.0L;
    if (sigma + root > 0.0L && det > 0.0L) {
        nu2 = 2.0L * det / (sigma + root);
    } else {
        nu2 = 0.5L * (sigma - root);
    }
    return static_cast<double>(std::sqrt(std::max(nu2, 0.0L)));
}

EntanglementResult log_negativity(const ReducedCM& r) {
    EntanglementResult e;
    e.Sigma = symplectic_sigma(r);
    e.nu_minus = nu_minus(r);
    e.E_N = e.nu_minus < 0.5 ? -std::log(2.0 * e.nu_minus) : 0.0;
    e.stable = true;
    return e;
}

std::optional<EntanglementResult> entanglement_at(const SystemParams& p, const DerivedConstants& d,
                                                  const DriveConfig& drive,
                                                  const SolverOptions& opts) {
    const SteadyState s = steady_state(p, d, drive, opts);
    const GaussianState g = gaussian_state(p, d, s);
    if (!g.stable) return std::nullopt;
    return log_negativity(reduce(g.V));
}

std::optional<double> entanglement_difference(const SystemParams& p, const DerivedConstants& d,
                                              DriveConfig drive, double Delta_c,
                                              const SolverOptions& opts) {
    drive.Delta_c = Delta_c;
    drive.direction = Direction::left_input;
    const auto left = entanglement_at(p, d, drive, opts);
    drive.direction = Direction::right_input;
    const auto right = entanglement_at(p, d, drive, opts);
    if (!left || !right) return std::nullopt;
    return left->E_N - right->E_N;
}

std::vector<RevivalPoint> revival_factors(std::span<const DetuningMaximum> grid) {
    std::optional<double> reference;
    for (const auto& g : grid) {
        if (g.J == 0.0 && g.Omega == 0.0 && g.E_N_max) {
            reference = std::max(reference.value_or(0.0), *g.E_N_max);
        }
    }
    if (!reference) throw ReferenceMissing("revival factor needs an (Omega = 0, J = 0) reference point");
    if (*reference <= 0.0) throw ReferenceMissing("reference device shows no entanglement");

    std::vector<RevivalPoint> out;
    for (const auto& g : grid) {
        if (g.J == 0.0 || g.Omega == 0.0) continue;
        RevivalPoint rp{g.J, g.Omega, std::nullopt};
        if (g.E_N_max) rp.chi = *g.E_N_max / *reference;
        out.push_back(rp);
    }
    return out;
}

std::optional<double> max_revival_factor(std::span<const DetuningMaximum> grid) {
    std::optional<double> best;
    for (const auto& rp : revival_factors(grid)) {
        if (rp.chi && (!best || *rp.chi > *best)) best = rp.chi;
    }
    return best;
}

}  // namespace spinom
