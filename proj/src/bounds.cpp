#include "leakywire/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace leakywire {

double constant_C(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("constant_C: a must be > 0");
    return std::max(2.0 * a, 1.0 / (2.0 * a));
}

double lambda2_square(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("lambda2_square: a must be > 0");
    const double pi = std::numbers::pi;
    return pi * pi / (4.0 * a * a);
}

double lemma1_lower_bound(double vol_ball, double vol_omega, double lambda2, double c0) {
    if (!(vol_ball > 0.0 && vol_omega > 0.0 && lambda2 > 0.0 && c0 > 0.0)) {
        throw std::invalid_argument("lemma1_lower_bound: inputs must be > 0");
    }
    if (vol_ball > vol_omega) {
        throw std::invalid_argument("lemma1_lower_bound: vol_ball must be <= vol_omega");
    }
    return vol_ball / (16.0 * vol_omega) * std::min(1.0, lambda2 / 2.0) *
           std::min(1.0, c0 / 2.0);
}

double alpha0(double kappa, double C) {
    if (!(kappa >= 0.0)) throw std::invalid_argument("alpha0: kappa must be >= 0");
    if (!(C > 0.0)) throw std::invalid_argument("alpha0: C must be > 0");
    if (kappa == 0.0) return 0.0;
    return kappa / (std::sqrt(2.0) * (kappa + 1.0) * C);
}

bool condition_met(double alpha, double gamma_sup, double kappa, double C) {
    if (!(alpha > 0.0) || !(gamma_sup >= 1.0) || !(kappa >= 0.0) || !(C > 0.0) ||
        !std::isfinite(alpha) || !std::isfinite(gamma_sup)) {
        throw std::invalid_argument("condition_met: invalid inputs");
    }
    const double lhs = alpha * std::sqrt(1.0 + gamma_sup * gamma_sup);
    const double rhs = kappa / ((kappa + 1.0) * C);
    // boundary-inclusive up to rounding, so alpha = alpha0 counts as met
    const double guard = 8.0 * std::numeric_limits<double>::epsilon() * std::max(lhs, rhs);
    return lhs <= rhs + guard;
}

Budget deformation_budget(double alpha, double alpha0_val) {
    if (!(alpha > 0.0)) throw std::invalid_argument("deformation_budget: alpha must be > 0");
    Budget b;
    b.value = 2.0 * alpha0_val * alpha0_val / (alpha * alpha) - 1.0;
    b.feasible = b.value >= 1.0;
    return b;
}

KappaResult kappa(double a, const FieldSpec& field, int n, const SolverOptions& opts) {
    if (n < 129) throw std::invalid_argument("kappa: n must be >= 129");
    if ((n - 1) % 4 != 0) {
        throw std::invalid_argument("kappa: (n-1) must be divisible by 4");
    }
    SolverOptions o = opts;
    o.k = 1;

    KappaResult out;
    out.n_fine = n;
    out.n_coarse = (n + 1) / 2;

    const DiscreteOperator fine = assemble_neumann_magnetic_laplacian(a, field, n);
    SpectralResult rf = lowest_eigenpairs(fine, o);
    if (!rf.converged) throw std::runtime_error("kappa: solver failed on the fine grid");
    out.raw_fine = rf.eigenvalues[0];

    const DiscreteOperator coarse =
        assemble_neumann_magnetic_laplacian(a, field, out.n_coarse);
    SpectralResult rc = lowest_eigenpairs(coarse, o);
    if (!rc.converged) throw std::runtime_error("kappa: solver failed on the coarse grid");
    out.raw_coarse = rc.eigenvalues[0];

    // first-order Richardson (boundary cells dominate the truncation error)
    out.value = 2.0 * out.raw_fine - out.raw_coarse;
    out.error_estimate = std::abs(out.raw_fine - out.raw_coarse);
    return out;
}

Lemma2Result lemma2_check(std::span<const double> g, double t0, double t1,
                          std::size_t index) {
    const std::size_t n = g.size();
    if (n < 1001) {
        throw std::invalid_argument("lemma2_check: need >= 1001 uniform samples");
    }
    if (!(t1 > t0)) throw std::invalid_argument("lemma2_check: empty interval");
    if (index >= n) throw std::invalid_argument("lemma2_check: index out of range");

    const double len = t1 - t0;
    const double dt = len / static_cast<double>(n - 1);

    std::vector<double> dsq(n), gsq(n);
    for (std::size_t i = 0; i < n; ++i) gsq[i] = g[i] * g[i];
    for (std::size_t i = 0; i < n; ++i) {
        double d;
        if (i == 0)
            d = (g[1] - g[0]) / dt;
        else if (i == n - 1)
            d = (g[n - 1] - g[n - 2]) / dt;
        else
            d = (g[i + 1] - g[i - 1]) / (2.0 * dt);
        dsq[i] = d * d;
    }
    auto trapezoid = [dt](const std::vector<double>& f) {
        double s = 0.5 * (f.front() + f.back());
        for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
        return s * dt;
    };

    Lemma2Result res;
    res.lhs = gsq[index];
    res.rhs = 2.0 * len * trapezoid(dsq) + (2.0 / len) * trapezoid(gsq);
    res.slack = res.rhs - res.lhs;
    res.holds = res.lhs <= res.rhs;
    return res;
}

}  // namespace leakywire
