#pragma once

#include <optional>
#include <span>
#include <vector>

#include "leakywire/eigensolve.hpp"
#include "leakywire/magnetic.hpp"

namespace leakywire {

/// C = max{2a, 1/(2a)}.
double constant_C(double a);

/// Second Neumann eigenvalue of the square (-a, a)^2: pi^2 / (4 a^2).
double lambda2_square(double a);

/// vol(B)/(16 vol(omega)) * min{1, lambda2/2} * min{1, c0/2}; c0 is an
/// external input (cited constant, not derived here).
double lemma1_lower_bound(double vol_ball, double vol_omega, double lambda2, double c0);

/// alpha0 = kappa / (sqrt(2) (kappa + 1) C); 0 when kappa = 0.
double alpha0(double kappa, double C);

/// Truth of alpha * sqrt(1 + gamma_sup^2) <= kappa / ((kappa + 1) C),
/// evaluated exactly as written.
bool condition_met(double alpha, double gamma_sup, double kappa, double C);

struct Budget {
    double value = 0.0;     // 2 alpha0^2 / alpha^2 - 1
    bool feasible = false;  // value >= 1 (some admissible curve exists)
};
Budget deformation_budget(double alpha, double alpha0_val);

/// Principal eigenvalue of the magnetic Neumann Laplacian on Omega, Richardson
/// extrapolated (first order) over the n and (n+1)/2 grids.
struct KappaResult {
    double value = 0.0;           // extrapolated
    double error_estimate = 0.0;  // |fine - coarse|
    double raw_fine = 0.0;
    double raw_coarse = 0.0;
    int n_fine = 0;
    int n_coarse = 0;
};
KappaResult kappa(double a, const FieldSpec& field, int n, const SolverOptions& opts = {});

/// |g(x)|^2 <= 2|I| int_I |g'|^2 + (2/|I|) int_I |g|^2 checked on uniform
/// samples (central differences, trapezoid integrals). `index` selects the
/// sample point x.
struct Lemma2Result {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
};
Lemma2Result lemma2_check(std::span<const double> g, double t0, double t1,
                          std::size_t index);

/// The paper's constant chain for one configuration.
struct BoundsReport {
    double a = 0.0;
    double C = 0.0;
    double lambda2 = 0.0;
    KappaResult kappa;
    double alpha0 = 0.0;
    double alpha = 0.0;
    double gamma_sup = 0.0;
    Budget budget;
    bool condition_met = false;
    std::optional<double> lemma1_bound;  // set when c0 is supplied
};

}  // namespace leakywire
