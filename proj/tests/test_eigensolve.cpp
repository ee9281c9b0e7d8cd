#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "leakywire/eigensolve.hpp"
#include "test_util.hpp"

using namespace leakywire;
using Scalar = DiscreteOperator::Scalar;
constexpr double kPi = std::numbers::pi;

namespace {

DiscreteOperator dirichlet_chain(int n, double h) {
    std::vector<Eigen::Triplet<Scalar>> t;
    const double ih2 = 1.0 / (h * h);
    for (int i = 0; i < n; ++i) {
        t.emplace_back(i, i, Scalar(2.0 * ih2, 0.0));
        if (i + 1 < n) t.emplace_back(i, i + 1, Scalar(-ih2, 0.0));
    }
    auto op = DiscreteOperator::from_triplets(n, t, h);
    return op;
}

}  // namespace

TEST_CASE("1d dirichlet chain: analytic discrete ground state to 1e-10") {
    const int n = 901;
    const double h = 0.05;
    auto op = dirichlet_chain(n, h);
    SolverOptions opts;
    opts.k = 2;
    opts.tol = 1e-11;
    auto r = lowest_eigenpairs(op, opts);
    REQUIRE(r.converged);
    for (int m = 1; m <= 2; ++m) {
        const double exact = 2.0 / (h * h) * (1.0 - std::cos(m * kPi / (n + 1)));
        CHECK(std::abs(r.eigenvalues[m - 1] - exact) <= 1e-10 * std::max(1.0, exact));
    }
}

TEST_CASE("2d dirichlet box: separable discrete spectrum to 1e-10") {
    GridSpec grid{1.0, 41, Bc::dirichlet};
    auto op = assemble_H(grid, FieldSpec::zero(0.1), CurveSpec::straight(0.1), 0.0);
    const double h = grid.spacing();
    const int n = grid.n;
    SolverOptions opts;
    opts.k = 3;
    opts.tol = 1e-11;
    auto r = lowest_eigenpairs(op, opts);
    REQUIRE(r.converged);
    auto mode = [&](int mx, int my) {
        return 2.0 / (h * h) *
               (2.0 - std::cos(mx * kPi / (n + 1)) - std::cos(my * kPi / (n + 1)));
    };
    const double l1 = mode(1, 1), l2 = mode(1, 2);
    CHECK(std::abs(r.eigenvalues[0] - l1) <= 1e-10 * l1);
    CHECK(std::abs(r.eigenvalues[1] - l2) <= 1e-10 * l2);
    CHECK(std::abs(r.eigenvalues[2] - l2) <= 1e-10 * l2);  // degenerate pair
}

TEST_CASE("1d delta: -beta^2/4 within 1%") {
    auto op = assemble_1d_delta(1.0, 20.0, 4001);
    auto r = lowest_eigenpairs(op, 1, 1e-9);
    REQUIRE(r.converged);
    CHECK(r.eigenvalues[0] == doctest::Approx(-0.25).epsilon(0.01));
}

TEST_CASE("oracle equivalence against dense diagonalization (dim <= 2000)") {
    SUBCASE("2d magnetic operator with delta line") {
        GridSpec grid{1.5, 41, Bc::neumann};  // dim 1681
        auto op = assemble_H(grid, FieldSpec::square_bump(1.0, 1.5, 0.5),
                             CurveSpec::bump(1.0, 0.3), 0.7);
        SolverOptions opts;
        opts.k = 4;
        opts.tol = 1e-10;
        auto r = lowest_eigenpairs(op, opts);
        REQUIRE(r.converged);
        const auto w = testutil::dense_eigenvalues(op);
        const double scale = std::max(std::abs(w.front()), std::abs(w.back()));
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(r.eigenvalues[j] - w[j]) <=
                  1e-8 * std::max(std::abs(w[j]), 1e-3 * scale));
        }
    }
    SUBCASE("1d chain via the jacobi fallback path") {
        auto op = dirichlet_chain(640, 0.07);
        op.structured = false;  // exercise the non-grid path
        SolverOptions opts;
        opts.k = 2;
        opts.tol = 1e-8;
        opts.max_iter = 20000;
        auto r = lowest_eigenpairs(op, opts);
        REQUIRE(r.converged);
        const auto w = testutil::dense_eigenvalues(op);
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(r.eigenvalues[j] - w[j]) <= 1e-8 * std::abs(w.back()));
        }
    }
}

TEST_CASE("residual and orthonormality invariants") {
    GridSpec grid{1.2, 33, Bc::dirichlet};
    auto op = assemble_H(grid, FieldSpec::disk_bump(1.0, 1.0, 0.4),
                         CurveSpec::straight(1.0), 1.0);
    SolverOptions opts;
    opts.k = 3;
    opts.tol = 1e-9;
    auto r = lowest_eigenpairs(op, opts);
    REQUIRE(r.converged);
    const double scale = op.diag_scale();
    for (int j = 0; j < opts.k; ++j) CHECK(r.residuals[j] <= opts.tol * scale);
    for (int i = 0; i < opts.k; ++i) {
        for (int j = 0; j < opts.k; ++j) {
            const Scalar g = r.eigenvectors.col(i).adjoint() * r.eigenvectors.col(j);
            CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) <= 1e-10);
        }
    }
    CHECK(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
}

TEST_CASE("neumann eigenvalues never exceed dirichlet ones") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> amp(0.0, 0.5);
    for (int trial = 0; trial < 3; ++trial) {
        GridSpec gd{1.5, 33, Bc::dirichlet};
        GridSpec gn{1.5, 33, Bc::neumann};
        const auto field = FieldSpec::square_bump(1.0, 1.0 + amp(rng), 0.5);
        const auto curve = CurveSpec::bump(1.0, amp(rng));
        const double alpha = 0.5 + amp(rng);
        const auto wd = testutil::dense_eigenvalues(
            assemble_H(gd, field, curve, alpha));
        const auto wn = testutil::dense_eigenvalues(
            assemble_H(gn, field, curve, alpha));
        for (std::size_t k = 0; k < wd.size(); ++k) CHECK(wn[k] <= wd[k] + 1e-10);
    }
}

TEST_CASE("determinism: same seed gives bitwise-identical eigenvalues") {
    GridSpec grid{1.2, 41, Bc::neumann};
    auto op = assemble_H(grid, FieldSpec::square_bump(1.0, 1.0, 0.5),
                         CurveSpec::straight(1.0), 0.9);
    SolverOptions opts;
    opts.k = 2;
    opts.tol = 1e-9;
    opts.seed = 42;
    auto r1 = lowest_eigenpairs(op, opts);
    auto r2 = lowest_eigenpairs(op, opts);
    REQUIRE(r1.eigenvalues.size() == r2.eigenvalues.size());
    CHECK(std::memcmp(r1.eigenvalues.data(), r2.eigenvalues.data(),
                      r1.eigenvalues.size() * sizeof(double)) == 0);
    CHECK(r1.iterations == r2.iterations);
}

TEST_CASE("rayleigh quotient") {
    GridSpec grid{1.0, 17, Bc::neumann};
    auto op = assemble_H(grid, FieldSpec::zero(0.5), CurveSpec::straight(0.5), 0.0);

    SUBCASE("constant vector on the free neumann operator gives 0") {
        Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(op.dimension());
        CHECK(std::abs(rayleigh_quotient(op, ones)) <= 1e-11);
    }
    SUBCASE("exact eigenvector returns its eigenvalue to 1e-12") {
        GridSpec g2{1.0, 9, Bc::dirichlet};
        auto small = assemble_H(g2, FieldSpec::zero(0.5), CurveSpec::straight(0.5), 0.0);
        auto [lam, vec] = testutil::dense_ground_state(small);
        CHECK(rayleigh_quotient(small, vec) ==
              doctest::Approx(lam).epsilon(1e-12));
    }
    SUBCASE("zero vector throws") {
        Eigen::VectorXcd z = Eigen::VectorXcd::Zero(op.dimension());
        CHECK_THROWS_AS(rayleigh_quotient(op, z), std::invalid_argument);
    }
}

TEST_CASE("count_below") {
    SpectralResult r;
    r.converged = true;
    r.eigenvalues = {-0.3, -0.24, 0.1};
    CHECK(count_below(r, -0.25, 0.005) == 1);
    CHECK(count_below(r, -0.25, 1.0) == 0);  // margin swallows everything
    SpectralResult empty;
    empty.converged = true;
    CHECK(count_below(empty, -0.25, 0.005) == 0);
    SpectralResult bad;
    bad.converged = false;
    CHECK_THROWS_AS(count_below(bad, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("solver error paths") {
    auto op = dirichlet_chain(50, 0.1);
    CHECK_THROWS_AS(lowest_eigenpairs(op, 51, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(lowest_eigenpairs(op, 0, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(lowest_eigenpairs(op, 1, 1e-2), std::invalid_argument);
    CHECK_THROWS_AS(lowest_eigenpairs(op, 1, 1e-13), std::invalid_argument);
}
