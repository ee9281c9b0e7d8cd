#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "leakywire/bounds.hpp"
#include "test_util.hpp"

using namespace leakywire;
constexpr double kPi = std::numbers::pi;

TEST_CASE("constant_C") {
    CHECK(constant_C(0.5) == 1.0);
    CHECK(constant_C(1.0) == 2.0);
    CHECK(constant_C(0.25) == 2.0);
    CHECK_THROWS(constant_C(0.0));
}

TEST_CASE("lambda2_square") {
    CHECK(lambda2_square(1.0) == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-15));
    CHECK(lambda2_square(0.5) == doctest::Approx(kPi * kPi).epsilon(1e-15));
    for (double a : {0.3, 1.0, 2.7}) {
        CHECK(lambda2_square(2 * a) == doctest::Approx(lambda2_square(a) / 4).epsilon(1e-15));
    }
}

TEST_CASE("lemma1_lower_bound") {
    CHECK(lemma1_lower_bound(1.0, 1.0, 2.0, 2.0) == doctest::Approx(1.0 / 16).epsilon(1e-15));
    CHECK(lemma1_lower_bound(0.25, 1.0, 1.0, 2.0) ==
          doctest::Approx(1.0 / 128).epsilon(1e-15));
    CHECK_THROWS(lemma1_lower_bound(2.0, 1.0, 1.0, 1.0));  // ball larger than omega
    CHECK_THROWS(lemma1_lower_bound(1.0, 1.0, 0.0, 1.0));
}

TEST_CASE("alpha0") {
    CHECK(alpha0(1.0, 1.0) == doctest::Approx(1.0 / (2 * std::sqrt(2.0))).epsilon(1e-15));
    CHECK(alpha0(0.0, 2.0) == 0.0);
    // kappa -> infinity limit: kappa/(kappa+1) -> 1
    CHECK(alpha0(1e14, 2.0) == doctest::Approx(1.0 / (2 * std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("condition_met") {
    CHECK(condition_met(1e-6, 1.5, 0.5, 2.0));
    CHECK_FALSE(condition_met(1.0, 1.0, 0.0, 2.0));  // kappa = 0: never met
    SUBCASE("boundary case alpha = alpha0 with gamma_sup = 1 counts as met") {
        for (double kap : {0.035, 0.5, 3.0}) {
            for (double C : {1.0, 2.0}) {
                const double a0 = alpha0(kap, C);
                CHECK(condition_met(a0, 1.0, kap, C));
                CHECK_FALSE(condition_met(a0 * 1.0001, 1.0, kap, C));
            }
        }
    }
    SUBCASE("monotone in alpha and gamma_sup") {
        const double kap = 0.4, C = 2.0;
        bool prev = true;
        for (double alpha = 1e-4; alpha < 1.0; alpha *= 1.7) {
            const bool met = condition_met(alpha, 1.3, kap, C);
            if (!prev) CHECK_FALSE(met);
            prev = met;
        }
        for (double g = 1.0; g < 50.0; g *= 1.5) {
            if (!condition_met(0.01, g, kap, C)) {
                CHECK_FALSE(condition_met(0.01, g * 2, kap, C));
            }
        }
    }
    SUBCASE("equivalence with alpha <= alpha0 at gamma_sup = 1 (log sweep)") {
        const double kap = 0.03512, C = 2.0;
        const double a0 = alpha0(kap, C);
        for (int i = 0; i < 50; ++i) {
            const double alpha = a0 * std::pow(10.0, -2.0 + 4.0 * i / 49.0);
            CHECK(condition_met(alpha, 1.0, kap, C) == (alpha <= a0));
        }
    }
}

TEST_CASE("deformation_budget") {
    const double a0 = 0.037;
    SUBCASE("alpha = alpha0 gives exactly 1 (straight line only)") {
        const auto b = deformation_budget(a0, a0);
        CHECK(b.value == 1.0);
        CHECK(b.feasible);
    }
    SUBCASE("alpha = alpha0/sqrt(2) gives 3") {
        const auto b = deformation_budget(a0 / std::sqrt(2.0), a0);
        CHECK(b.value == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(b.feasible);
    }
    SUBCASE("alpha = 2 alpha0 is infeasible at -1/2") {
        const auto b = deformation_budget(2 * a0, a0);
        CHECK(b.value == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK_FALSE(b.feasible);
    }
    SUBCASE("feasible iff alpha <= alpha0 over a sweep") {
        for (int i = 0; i < 40; ++i) {
            const double alpha = a0 * std::pow(10.0, -1.5 + 3.0 * i / 39.0);
            CHECK(deformation_budget(alpha, a0).feasible == (alpha <= a0));
        }
    }
}

TEST_CASE("kappa: numerical principal eigenvalue on Omega") {
    SUBCASE("zero field gives zero") {
        auto kr = kappa(1.0, FieldSpec::zero(1.0), 129);
        CHECK(std::abs(kr.value) <= 1e-8);
    }
    SUBCASE("square bump field gives a strictly positive kappa") {
        auto kr = kappa(1.0, FieldSpec::square_bump(1.0, 1.0, 0.5), 129);
        CHECK(kr.value > 1e-3);
        CHECK(kr.error_estimate <= 0.05 * kr.value);
        // halving the field scale lowers kappa
        auto half = kappa(1.0, FieldSpec::square_bump(1.0, 1.0, 0.5, 0.5), 129);
        CHECK(half.value > 0.0);
        CHECK(half.value < kr.value);
    }
    SUBCASE("lemma 1 formula stays below the computed kappa") {
        // c0 is an external constant; the bound must hold for matched geometry
        const double lam2 = lambda2_square(1.0);
        for (double b : {0.5, 1.0, 2.0}) {
            auto kr = kappa(1.0, FieldSpec::disk_bump(1.0, b, 0.5), 129);
            for (double c0 : {0.5, 2.0, 50.0}) {
                const double bound =
                    lemma1_lower_bound(kPi * 0.25, 4.0, lam2, c0);
                CHECK(bound <= kr.value);
            }
        }
    }
    SUBCASE("preconditions") {
        CHECK_THROWS(kappa(1.0, FieldSpec::zero(1.0), 65));
        CHECK_THROWS(kappa(1.0, FieldSpec::zero(1.0), 130));
    }
}

TEST_CASE("lemma2_check") {
    std::vector<double> samples(1001);

    SUBCASE("constant g = 1: 1 <= 0 + 2") {
        std::fill(samples.begin(), samples.end(), 1.0);
        auto r = lemma2_check(samples, 0.0, 1.0, 500);
        CHECK(r.holds);
        CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.rhs == doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("g(t) = t on [0,1] at x = 1: 1 <= 8/3") {
        for (int i = 0; i <= 1000; ++i) samples[i] = i / 1000.0;
        auto r = lemma2_check(samples, 0.0, 1.0, 1000);
        CHECK(r.holds);
        CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.rhs == doctest::Approx(8.0 / 3.0).epsilon(1e-5));
        CHECK(r.slack == doctest::Approx(5.0 / 3.0).epsilon(1e-4));
    }
    SUBCASE("100 random polynomials: inequality always holds, quadrature agrees") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> t0d(-3.0, 3.0), lend(0.1, 8.0);
        std::uniform_int_distribution<int> xd(0, 1000);
        for (int trial = 0; trial < 100; ++trial) {
            const auto p = testutil::random_poly(rng);
            const double t0 = t0d(rng), len = lend(rng), t1 = t0 + len;
            for (int i = 0; i <= 1000; ++i) samples[i] = p(t0 + len * i / 1000.0);
            const int ix = xd(rng);
            auto r = lemma2_check(samples, t0, t1, ix);
            CHECK(r.holds);
            // oracle: exact polynomial integrals
            const auto dp = p.derivative();
            const double rhs_exact =
                2.0 * len * dp.integral_sq(t0, t1) + 2.0 / len * p.integral_sq(t0, t1);
            CHECK(r.rhs == doctest::Approx(rhs_exact).epsilon(2e-3));
            const double x = t0 + len * ix / 1000.0;
            CHECK(p(x) * p(x) <= rhs_exact * (1 + 1e-12));
        }
    }
    SUBCASE("preconditions") {
        std::vector<double> few(100, 1.0);
        CHECK_THROWS(lemma2_check(few, 0.0, 1.0, 0));
        CHECK_THROWS(lemma2_check(samples, 1.0, 0.0, 0));
        CHECK_THROWS(lemma2_check(samples, 0.0, 1.0, 5000));
    }
}
