#include "spinom/dynamics.hpp"

#include "spinom/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace spinom {

Mat6 build_drift(const SystemParams& p, const DerivedConstants& d, const SteadyState& s) {
    const double k = d.kappa;
    const double J = p.J;
    const double dd = s.Delta_tilde_driven;
    const double dr = s.Delta_tilde_reflected;
    const double gdx = s.G_driven.real(), gdy = s.G_driven.imag();
    const double grx = s.G_reflected.real(), gry = s.G_reflected.imag();

    Mat6 A;
    A << -k,   dd,   0.0,  J,    -gdy, 0.0,
         -dd,  -k,   -J,   0.0,  gdx,  0.0,
         0.0,  J,    -k,   dr,   -gry, 0.0,
         -J,   0.0,  -dr,  -k,   grx,  0.0,
         0.0,  0.0,  0.0,  0.0,  0.0,  p.omega_m,
         gdx,  gdy,  grx,  gry,  -p.omega_m, -p.gamma_m;
    return A;
}

Mat6 build_diffusion(const SystemParams& p, const DerivedConstants& d) {
    Mat6 D = Mat6::Zero();
    for (int i = 0; i < 4; ++i) D(i, i) = d.kappa;
    D(5, 5) = p.gamma_m * (2.0 * d.n_m + 1.0);
    return D;
}

CharPoly closed_form_coefficients(const SystemParams& p, const DerivedConstants& d,
                                  const SteadyState& s) {
    const double k = d.kappa;
    const double g = p.gamma_m;
    const double w = p.omega_m;
    const double J = p.J;
    const double J2 = J * J, k2 = k * k, w2 = w * w;
    // "+" is the driven mode, "-" the reflected one.
    const double dp = s.Delta_tilde_driven;
    const double dm = s.Delta_tilde_reflected;
    const double Gp2 = std::norm(s.G_driven);
    const double Gm2 = std::norm(s.G_reflected);

    const double mu0 = J2 + k2;
    const double mu1 = dp * dp + dm * dm;
    const double mu2 = (dp * dm - 2.0 * J2) * dp * dm;
    const double mu4 = 2.0 * J *
        (s.G_reflected.real() * s.G_driven.real() + s.G_reflected.imag() * s.G_driven.imag());
    const double mu3 = w * (dp * Gp2 + dm * Gm2 + mu4);
    // Cross-paired variant entering a6.
    const double mu3_cross = w * (dp * Gm2 + dm * Gp2 - mu4);

    const double sigma0 = 2.0 * mu0 + mu1;
    const double sigma1 = k2 + 2.0 * k * g + w2;
    const double sigma2 = mu0 * mu0 + k2 * mu1 + mu2;
    const double sigma2_alt = mu2 - mu3 + mu0 * (J2 - k2);
    const double sigma_p = (dp * J2 - dm * k2) * Gm2;
    const double sigma_m = (dm * J2 - dp * k2) * Gp2;

    CharPoly a{};
    a[0] = 1.0;
    a[1] = 4.0 * k + g;
    a[2] = sigma0 + w2 + 4.0 * k * (k + g);
    a[3] = sigma0 * (2.0 * k + g) + 4.0 * k * (w2 + k * g);
    a[4] = sigma0 * sigma1 + sigma2_alt + 4.0 * k2 * w2;
    a[5] = g * mu2 + mu0 * (g * mu0 + 4.0 * k * w2) - 2.0 * k * mu3 + k * mu1 * (k * g + 2.0 * w2);
    a[6] = w * (sigma_p + sigma_m + w * sigma2 - mu0 * mu4) - mu3_cross * dp * dm;
    return a;
}

std::array<double, 6> hurwitz_determinants(const CharPoly& a) {
    // Rescale to a monic polynomial in lambda / s so the determinants stay
    // well conditioned; det(theta_k) is homogeneous of weight k(k+1)/2.
    double s = 0.0;
    for (int j = 1; j <= 6; ++j) s = std::max(s, std::pow(std::abs(a[j]), 1.0 / j));
    if (s == 0.0) s = 1.0;
    CharPoly b{};
    for (int j = 0; j <= 6; ++j) b[j] = a[j] / std::pow(s, j);

    std::array<double, 6> dets{};
    for (int k = 1; k <= 6; ++k) {
        Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(k, k);
        for (int l = 1; l <= k; ++l) {
            for (int n = 1; n <= k; ++n) {
                const int j = 2 * l - n;
                if (j >= 0 && j <= 6) theta(l - 1, n - 1) = b[j];
            }
        }
        const double det = theta.partialPivLu().determinant();
        dets[k - 1] = det * std::pow(s, k * (k + 1) / 2);
    }
    return dets;
}

double signed_log(double x) {
    if (x > 0.0) return std::log(x);
    if (x < 0.0) return -std::log(-x);
    return 0.0;
}

double max_real_eigenvalue(const Mat6& A) {
    Eigen::EigenSolver<Mat6> es(A, false);
    return es.eigenvalues().real().maxCoeff();
}

StabilityReport eigen_stability(const Mat6& A) {
    StabilityReport r;
    r.max_real_eig = max_real_eigenvalue(A);
    r.eig_stable = r.max_real_eig < 0.0;
    return r;
}

StabilityReport stability(const Mat6& A, const SystemParams& p, const DerivedConstants& d,
                          const SteadyState& s) {
    StabilityReport r = eigen_stability(A);
    r.a = closed_form_coefficients(p, d, s);
    r.theta_dets = hurwitz_determinants(r.a);
    r.Theta5 = signed_log(r.theta_dets[4]);
    r.Theta6 = signed_log(r.theta_dets[5]);
    r.rh_stable = std::all_of(r.theta_dets.begin(), r.theta_dets.end(),
                              [](double x) { return x > 0.0; });
    return r;
}

Mat6 solve_lyapunov(const Mat6& A, const Mat6& D, double stability_margin) {
    const double max_re = max_real_eigenvalue(A);
    if (!(max_re < -stability_margin)) {
        throw UnstableSystem("drift matrix is not stable (max Re eig = " + std::to_string(max_re) + ")",
                             max_re);
    }
    using Mat36 = Eigen::Matrix<double, 36, 36>;
    using Vec36 = Eigen::Matrix<double, 36, 1>;
    const Mat6 I = Mat6::Identity();

    // vec(A V + V A^T) = (I (x) A + A (x) I) vec(V), column-major vec.
    Mat36 K = Mat36::Zero();
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            K.block<6, 6>(6 * i, 6 * j) = I(i, j) * A + A(i, j) * I;
        }
    }
    const Vec36 rhs = -Eigen::Map<const Vec36>(D.data());
    const Eigen::PartialPivLU<Mat36> lu(K);
    Vec36 x = lu.solve(rhs);
    x += lu.solve(rhs - K * x);  // one step of iterative refinement

    Mat6 V = Eigen::Map<const Mat6>(x.data());
    return 0.5 * (V + V.transpose());
}

double lyapunov_residual(const Mat6& A, const Mat6& V, const Mat6& D) {
    const double dn = D.norm();
    const double r = (A * V + V * A.transpose() + D).norm();
    return dn > 0.0 ? r / dn : r;
}

std::array<double, 3> symplectic_eigenvalues(const Mat6& V) {
    Mat6 omega = Mat6::Zero();
    for (int m = 0; m < 3; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    Eigen::EigenSolver<Mat6> es(omega * V, false);
    std::array<double, 6> mods{};
    for (int i = 0; i < 6; ++i) mods[i] = std::abs(es.eigenvalues()[i]);
    std::sort(mods.begin(), mods.end());
    return {0.5 * (mods[0] + mods[1]), 0.5 * (mods[2] + mods[3]), 0.5 * (mods[4] + mods[5])};
}

GaussianState gaussian_state(const SystemParams& p, const DerivedConstants& d,
                             const SteadyState& s) {
    GaussianState g;
    g.A = build_drift(p, d, s);
    g.D = build_diffusion(p, d);
    g.max_real_eig = max_real_eigenvalue(g.A);
    const double margin = kStabilityMarginPerKappa * d.kappa;
    g.stable = g.max_real_eig < -margin;
    if (g.stable) g.V = solve_lyapunov(g.A, g.D, margin);
    return g;
}

}  // namespace spinom
