#pragma once

// Shared helpers for the test suites: a LAPACK-backed dense oracle (kept
// independent of the iterative solver path), small quadrature oracles, and
// deterministic random configuration generators.

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "leakywire/lattice.hpp"

namespace testutil {

/// All eigenvalues of a Hermitian operator, ascending (LAPACK zheevd).
inline std::vector<double> dense_eigenvalues(const leakywire::DiscreteOperator& op) {
    const int n = static_cast<int>(op.dimension());
    Eigen::MatrixXcd A(op.matrix);  // column-major, full storage
    std::vector<double> w(n);
    const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, A.data(), n, w.data());
    if (info != 0) throw std::runtime_error("zheevd failed");
    return w;
}

/// Lowest eigenpair via LAPACK (vectors included).
inline std::pair<double, Eigen::VectorXcd> dense_ground_state(
    const leakywire::DiscreteOperator& op) {
    const int n = static_cast<int>(op.dimension());
    Eigen::MatrixXcd A(op.matrix);
    std::vector<double> w(n);
    const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, A.data(), n, w.data());
    if (info != 0) throw std::runtime_error("zheevd failed");
    return {w[0], A.col(0)};
}

/// Composite-trapezoid quadrature (independent of the adaptive Simpson used
/// inside the library).
inline double trapezoid(const std::function<double(double)>& f, double a, double b,
                        int n) {
    double s = 0.5 * (f(a) + f(b));
    const double h = (b - a) / n;
    for (int i = 1; i < n; ++i) s += f(a + i * h);
    return s * h;
}

/// Uniformly sampled polynomial with coefficients in [-1, 1].
struct Poly {
    std::vector<double> c;
    double operator()(double t) const {
        double v = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
        return v;
    }
    Poly derivative() const {
        Poly d;
        for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * i);
        if (d.c.empty()) d.c.push_back(0.0);
        return d;
    }
    // exact integral of p^2 over [a, b]
    double integral_sq(double a, double b) const {
        std::vector<double> sq(2 * c.size() - 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < c.size(); ++j) sq[i + j] += c[i] * c[j];
        double va = 0.0, vb = 0.0;
        for (std::size_t k = sq.size(); k-- > 0;) {
            const double coef = sq[k] / (k + 1);
            va = va * a + coef;
            vb = vb * b + coef;
        }
        return vb * b - va * a;
    }
};

inline Poly random_poly(std::mt19937_64& rng, int max_degree = 5) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    Poly p;
    const int d = deg(rng);
    for (int i = 0; i <= d; ++i) p.c.push_back(coef(rng));
    return p;
}

}  // namespace testutil
