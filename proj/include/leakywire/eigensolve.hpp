#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "leakywire/lattice.hpp"

namespace leakywire {

struct SolverOptions {
    int k = 1;
    double tol = 1e-8;        // relative residual: ||Hv - lv|| <= tol * max|diag|
    std::uint64_t seed = 42;  // deterministic start block
    int max_iter = 5000;
    int block = 0;            // 0 = automatic (k + extras)
};

struct SpectralResult {
    std::vector<double> eigenvalues;   // ascending, k entries
    Eigen::MatrixXcd eigenvectors;     // dimension x k, orthonormal
    std::vector<double> residuals;     // ||Hv - lv||_2 per pair
    int iterations = 0;
    bool converged = false;
    std::string diagnostics;
};

/// k lowest eigenpairs by a Jacobi-preconditioned block LOBPCG iteration with
/// a seeded deterministic start. Falls back to dense diagonalization for tiny
/// operators. Throws std::invalid_argument when k exceeds the dimension;
/// block-rank breakdown is reported through `converged` + `diagnostics`.
SpectralResult lowest_eigenpairs(const DiscreteOperator& op, int k, double tol);
SpectralResult lowest_eigenpairs(const DiscreteOperator& op, const SolverOptions& opts);

/// <v, Hv> / <v, v>. Throws on a zero vector.
double rayleigh_quotient(const DiscreteOperator& op, const Eigen::VectorXcd& v);

/// Number of eigenvalues strictly below threshold - margin.
int count_below(const SpectralResult& result, double threshold, double margin);

}  // namespace leakywire
