#include "spinom/oracles.hpp"

#include "spinom/errors.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace spinom::oracle {

namespace {

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kNodes[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                              0.9602898564975363};
constexpr double kWeights[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                0.1012285362903763};

Mat6 panel_integral(const Mat6& A, const Mat6& D, double step) {
    Mat6 K = Mat6::Zero();
    const double half = 0.5 * step;
    for (int i = 0; i < 4; ++i) {
        for (double sign : {-1.0, 1.0}) {
            const double t = half * (1.0 + sign * kNodes[i]);
            const Mat6 E = (A * t).exp();
            K += kWeights[i] * half * (E * D * E.transpose());
        }
    }
    return K;
}

}  // namespace

Mat6 lyapunov_quadrature(const Mat6& A, const Mat6& D, double horizon, double step) {
    const double max_re = max_real_eigenvalue(A);
    if (!(max_re < 0.0)) throw UnstableSystem("quadrature oracle needs a stable drift matrix", max_re);
    if (!(step > 0.0) || !(horizon >= step)) {
        throw NumericDomainError("quadrature oracle needs 0 < step <= horizon");
    }
    const auto panels = static_cast<unsigned long long>(std::ceil(horizon / step));

    // Binary splitting: (S_m, Phi_m) cover 2^j panels; the total integral
    // is assembled from the set bits of `panels`.
    Mat6 S = panel_integral(A, D, step);
    Mat6 Phi = (A * step).exp();
    Mat6 total = Mat6::Zero();
    Mat6 shift = Mat6::Identity();
    for (unsigned long long n = panels; n != 0; n >>= 1) {
        if (n & 1ULL) {
            total += shift * S * shift.transpose();
            shift = shift * Phi;
        }
        if (n > 1) {
            S += Phi * S * Phi.transpose();
            Phi = Phi * Phi;
        }
    }
    return 0.5 * (total + total.transpose());
}

Mat6 lyapunov_quadrature(const Mat6& A, const Mat6& D) {
    Eigen::EigenSolver<Mat6> es(A, false);
    const auto ev = es.eigenvalues();
    double slowest = std::numeric_limits<double>::infinity();
    double fastest = 0.0;
    for (int i = 0; i < 6; ++i) {
        slowest = std::min(slowest, -ev[i].real());
        fastest = std::max(fastest, std::abs(ev[i]));
    }
    if (!(slowest > 0.0)) throw UnstableSystem("quadrature oracle needs a stable drift matrix", -slowest);
    const double step = 1.0 / (64.0 * fastest);
    const double horizon = std::max(20.0 / slowest, step);
    return lyapunov_quadrature(A, D, horizon, step);
}

Vec6 mean_field_rhs(const SystemParams& p, const DerivedConstants& d, const DriveConfig& drive,
                    const Vec6& x) {
    const double shift = sagnac_shift(p, d, drive.signed_rotation());
    const double Delta_D = drive.Delta_c + shift;
    const double Delta_R = drive.Delta_c - shift;
    const double omega_l = d.omega_c - drive.Delta_c;
    const double eps = drive_amplitude(drive.P, d.kappa, omega_l, p.hbar);

    const cdouble i{0.0, 1.0};
    const double s2 = std::sqrt(2.0);
    const cdouble aD{x[0] / s2, x[1] / s2};
    const cdouble aR{x[2] / s2, x[3] / s2};
    const double q = x[4];
    const double pm = x[5];

    const cdouble daD = -(i * Delta_D + d.kappa) * aD + i * d.G0 * q * aD - i * p.J * aR + eps;
    const cdouble daR = -(i * Delta_R + d.kappa) * aR + i * d.G0 * q * aR - i * p.J * aD;

    Vec6 f;
    f << s2 * daD.real(), s2 * daD.imag(), s2 * daR.real(), s2 * daR.imag(), p.omega_m * pm,
        -p.omega_m * q - p.gamma_m * pm + d.G0 * (std::norm(aD) + std::norm(aR));
    return f;
}

Vec6 state_vector(const SteadyState& s) {
    const double s2 = std::sqrt(2.0);
    Vec6 x;
    x << s2 * s.alpha_driven.real(), s2 * s.alpha_driven.imag(), s2 * s.alpha_reflected.real(),
        s2 * s.alpha_reflected.imag(), s.q_s, s.p_s;
    return x;
}

Mat6 finite_difference_drift(const SystemParams& p, const DerivedConstants& d,
                             const DriveConfig& drive, const SteadyState& s, double relative_step) {
    const Vec6 x0 = state_vector(s);
    const double scale = std::max(x0.cwiseAbs().maxCoeff(), 1.0);
    Mat6 Jac;
    for (int k = 0; k < 6; ++k) {
        const double h = relative_step * scale;
        Vec6 xp = x0, xm = x0;
        xp[k] += h;
        xm[k] -= h;
        Jac.col(k) = (mean_field_rhs(p, d, drive, xp) - mean_field_rhs(p, d, drive, xm)) / (2.0 * h);
    }
    return Jac;
}

double ppt_nu_minus(const Mat4& Vp) {
    Mat4 flip = Mat4::Identity();
    flip(3, 3) = -1.0;
    const Mat4 Vt = flip * Vp * flip;
    Mat4 Om = Mat4::Zero();
    Om(0, 1) = 1.0;
    Om(1, 0) = -1.0;
    Om(2, 3) = 1.0;
    Om(3, 2) = -1.0;
    const Eigen::Matrix<cdouble, 4, 4> M = cdouble{0.0, 1.0} * (Om * Vt).cast<cdouble>();
    Eigen::ComplexEigenSolver<Eigen::Matrix<cdouble, 4, 4>> es(M, false);
    double nu = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) nu = std::min(nu, std::abs(es.eigenvalues()[i]));
    return nu;
}

CharPoly faddeev_leverrier(const Mat6& A) {
    CharPoly a{};
    a[0] = 1.0;
    Mat6 M = Mat6::Identity();
    for (int k = 1; k <= 6; ++k) {
        const Mat6 AM = A * M;
        a[k] = -AM.trace() / k;
        M = AM + a[k] * Mat6::Identity();
    }
    return a;
}

Mat4 two_mode_squeezed_vacuum(double r) {
    const double c = 0.5 * std::cosh(2.0 * r);
    const double s = 0.5 * std::sinh(2.0 * r);
    Mat4 V;
    V << c, 0, s, 0,
         0, c, 0, -s,
         s, 0, c, 0,
         0, -s, 0, c;
    return V;
}

}  // namespace spinom::oracle
