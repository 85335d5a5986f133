#include "spinom/selftest.hpp"

#include "spinom/aeromech.hpp"
#include "spinom/config.hpp"
#include "spinom/entanglement.hpp"
#include "spinom/oracles.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>

namespace spinom {

namespace {

std::string fmt(const char* pattern, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

SelftestCase within(std::string name, double value, double target, double rel) {
    const double err = std::abs(value / target - 1.0);
    return {std::move(name), err <= rel, fmt("value %.6g, reference %.6g", value, target)};
}

// A few drive points on both sides of the mechanical sideband, with and
// without backscattering and rotation.
std::vector<ModelConfig> sample_points() {
    std::vector<ModelConfig> out;
    const DerivedConstants d = derive_constants(SystemParams{});
    for (double J : {0.0, d.kappa}) {
        for (double Omega : {0.0, 8e3, 23e3}) {
            for (double x : {0.6, 1.0, 1.3}) {
                ModelConfig c;
                c.params.J = J;
                c.drive.Omega = Omega;
                c.drive.Delta_c = x * c.params.omega_m;
                out.push_back(c);
            }
        }
    }
    return out;
}

double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).norm() / std::max(b.norm(), 1e-300);
}

}  // namespace

std::vector<SelftestCase> run_selftest() {
    std::vector<SelftestCase> cases;
    auto guarded = [&](const std::string& name, const std::function<SelftestCase()>& f) {
        try {
            cases.push_back(f());
        } catch (const std::exception& e) {
            cases.push_back({name, false, e.what()});
        }
    };

    const SystemParams p;
    const DerivedConstants d = derive_constants(p);
    cases.push_back(within("thermal occupation n_m", d.n_m, 269.4, 0.005));
    cases.push_back(within("zero-point fluctuation x_zp", d.x_zp, 0.41e-15, 0.02));
    cases.push_back(within("single-photon coupling G0", d.G0, 452.1, 0.01));
    cases.push_back(within("optical decay rate kappa", d.kappa, 38.0e6, 0.01));
    cases.push_back(within("mechanical quality factor Q_m", d.Q_m, 1.21e4, 0.01));

    guarded("spin-limit ratios", [&] {
        const auto lim = aero::spin_limits(aero::TaperGeometry{}, p.R);
        const double r1 = lim.Omega1 / lim.Omega0 / (2.8 / 81.6);
        const double r2 = lim.Omega2 / lim.Omega0 / (49.9 / 81.6);
        const bool ok = std::abs(r1 - 1.0) < 0.01 && std::abs(r2 - 1.0) < 0.01;
        return SelftestCase{"spin-limit ratios", ok, fmt("Omega1/Omega0 %.5g, Omega2/Omega0 %.5g",
                                                         lim.Omega1 / lim.Omega0, lim.Omega2 / lim.Omega0)};
    });

    guarded("two-mode squeezed vacuum", [&] {
        double worst = 0.0;
        for (double r : {0.1, 0.5, 1.0}) {
            const auto e = log_negativity(from_two_mode(oracle::two_mode_squeezed_vacuum(r)));
            worst = std::max(worst, std::abs(e.E_N - 2.0 * r));
        }
        return SelftestCase{"two-mode squeezed vacuum E_N = 2r", worst < 1e-10,
                            fmt("max error %.3g (tolerance %.1g)", worst, 1e-10)};
    });

    double lyap = 0.0, ppt = 0.0, drift = 0.0, coeff = 0.0;
    int stable = 0, disagreements = 0;
    guarded("oracle sample", [&] {
        for (const auto& c : sample_points()) {
            const DerivedConstants dc = derive_constants(c.params);
            const SteadyState s = steady_state(c.params, dc, c.drive);
            const GaussianState g = gaussian_state(c.params, dc, s);
            const StabilityReport rep = stability(g.A, c.params, dc, s);
            if (!rep.verdicts_agree()) ++disagreements;

            const CharPoly fl = oracle::faddeev_leverrier(g.A);
            for (int k = 1; k <= 6; ++k) {
                coeff = std::max(coeff, std::abs(rep.a[k] - fl[k]) / std::max(std::abs(fl[k]), 1e-300));
            }
            drift = std::max(drift, rel_diff(oracle::finite_difference_drift(c.params, dc, c.drive, s), g.A));
            if (!g.stable) continue;
            ++stable;
            lyap = std::max(lyap, rel_diff(oracle::lyapunov_quadrature(g.A, g.D), g.V));
            const ReducedCM r = reduce(g.V);
            ppt = std::max(ppt, std::abs(nu_minus(r) - oracle::ppt_nu_minus(r.Vp)));
        }
        return SelftestCase{"oracle sample", stable > 0, fmt("%g of %g points stable", stable, 18)};
    });
    cases.push_back({"Routh-Hurwitz matches eigenvalue verdict", disagreements == 0,
                     fmt("%g disagreements, %g expected", disagreements, 0)});
    cases.push_back({"closed-form coefficients vs Faddeev-LeVerrier", coeff < 1e-8,
                     fmt("max relative error %.3g (tolerance %.1g)", coeff, 1e-8)});
    cases.push_back({"drift matrix vs finite-difference Jacobian", drift < 1e-6,
                     fmt("max relative error %.3g (tolerance %.1g)", drift, 1e-6)});
    cases.push_back({"Lyapunov solve vs quadrature", lyap < 1e-6,
                     fmt("max relative error %.3g (tolerance %.1g)", lyap, 1e-6)});
    cases.push_back({"nu_minus vs partial-transpose spectrum", ppt < 1e-10,
                     fmt("max absolute error %.3g (tolerance %.1g)", ppt, 1e-10)});
    return cases;
}

}  // namespace spinom
