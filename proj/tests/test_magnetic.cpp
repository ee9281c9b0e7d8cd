#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "leakywire/magnetic.hpp"
#include "test_util.hpp"

using namespace leakywire;
constexpr double kPi = std::numbers::pi;

TEST_CASE("eval_B pointwise values") {
    CHECK(eval_B(FieldSpec::zero(1.0), 0.3, -7.0) == 0.0);
    const auto sq = FieldSpec::square_bump(1.0, 1.0, 0.5);
    CHECK(eval_B(sq, 0.0, 0.0) == 1.0);
    CHECK(eval_B(sq, 0.9, 0.0) == 0.0);
    const auto disk = FieldSpec::disk_bump(1.0, 2.0, 0.5);
    CHECK(eval_B(disk, 0.1, 0.1) == 2.0);
    CHECK(eval_B(disk, 0.6, 0.0) == 0.0);
}

TEST_CASE("B vanishes outside Omega for every validated family") {
    const std::vector<FieldSpec> fields = {
        FieldSpec::zero(1.0), FieldSpec::square_bump(1.0, 1.0, 0.5),
        FieldSpec::disk_bump(1.0, -2.0, 0.4, {0.3, -0.2}),
        FieldSpec::gaussian_truncated(1.0, 1.5, 0.3, 0.9)};
    for (const auto& f : fields) {
        REQUIRE(validate_field(f).ok);
        for (int i = 0; i < 64; ++i) {
            const double th = 2 * kPi * i / 64;
            for (double r : {1.45, 2.0, 10.0}) {
                CHECK(std::abs(eval_B(f, r * std::cos(th), r * std::sin(th))) <= 1e-12);
            }
        }
    }
}

TEST_CASE("landau_A closed forms") {
    SUBCASE("zero field") {
        const auto A = landau_A(FieldSpec::zero(1.0), 0.2, 5.0);
        CHECK(A[0] == 0.0);
        CHECK(A[1] == 0.0);
    }
    SUBCASE("square bump saturates at -b c for y >= c") {
        const auto f = FieldSpec::square_bump(1.0, 2.0, 0.5);
        for (double x : {0.0, 0.3, -0.45}) {
            for (double y : {0.5, 0.8, 3.0}) {
                CHECK(landau_A(f, x, y)[0] == doctest::Approx(-1.0).epsilon(1e-15));
            }
            CHECK(landau_A(f, x, -1.0)[0] == doctest::Approx(1.0).epsilon(1e-15));
        }
    }
    SUBCASE("A vanishes for |x| > a (all families)") {
        const std::vector<FieldSpec> fields = {
            FieldSpec::square_bump(1.0, 1.0, 0.5),
            FieldSpec::disk_bump(1.0, 1.0, 0.4, {0.3, 0.2}),
            FieldSpec::gaussian_truncated(1.0, 1.0, 0.4, 1.0)};
        for (const auto& f : fields) {
            for (double x : {-5.0, -1.001, 1.001, 2.0}) {
                for (double y : {-3.0, 0.0, 0.7}) {
                    CHECK(landau_A(f, x, y)[0] == 0.0);
                    CHECK(landau_A(f, x, y)[1] == 0.0);
                }
            }
        }
    }
    SUBCASE("gaussian matches an independent quadrature of B") {
        const auto f = FieldSpec::gaussian_truncated(1.0, 1.3, 0.35, 0.9);
        for (double x : {0.0, 0.2, -0.6}) {
            for (double y : {0.3, 0.85, -0.5}) {
                const double oracle = -testutil::trapezoid(
                    [&](double t) { return eval_B(f, x, t); }, 0.0, y, 400000);
                CHECK(landau_A(f, x, y)[0] == doctest::Approx(oracle).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("gauge consistency: curl of A recovers B at interior smooth points") {
    // B = -d/dy A_x at points away from support edges; central differences O(h^2)
    const std::vector<FieldSpec> fields = {
        FieldSpec::square_bump(1.0, 2.0, 0.5),
        FieldSpec::disk_bump(1.0, 1.0, 0.45, {0.1, 0.0}),
        FieldSpec::gaussian_truncated(1.0, 1.0, 0.4, 0.95)};
    const std::vector<std::pair<double, double>> pts = {{0.1, 0.2}, {0.0, -0.15}};
    for (const auto& f : fields) {
        for (auto [x, y] : pts) {
            const double b = eval_B(f, x, y);
            double prev_err = -1.0;
            for (double h : {1e-3, 5e-4}) {
                const double curl =
                    -(landau_A(f, x, y + h)[0] - landau_A(f, x, y - h)[0]) / (2 * h);
                const double err = std::abs(curl - b);
                if (prev_err >= 0.0 && prev_err > 1e-12) {
                    CHECK(err <= prev_err * 0.3 + 1e-12);  // ~ O(h^2) decay
                }
                prev_err = err;
                CHECK(err <= 1e-4 * std::max(1.0, std::abs(b)));
            }
        }
    }
}

TEST_CASE("scaling linearity is exact") {
    const auto base = FieldSpec::square_bump(1.0, 1.7, 0.6);
    for (double s : {0.0, 0.25, 2.0}) {
        const auto scaled = base.with_scale(s);
        for (double x : {0.1, 0.55}) {
            for (double y : {-0.4, 0.9}) {
                CHECK(landau_A(scaled, x, y)[0] == s * landau_A(base, x, y)[0]);
            }
        }
        CHECK(flux(scaled) == s * flux(base));
    }
}

TEST_CASE("flux closed forms") {
    CHECK(flux(FieldSpec::zero(2.0)) == 0.0);
    CHECK(flux(FieldSpec::square_bump(1.0, 2.0, 0.5)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(flux(FieldSpec::disk_bump(1.0, 1.0, 0.5)) ==
          doctest::Approx(kPi / 4.0).epsilon(1e-15));
    // gaussian flux vs 2D quadrature oracle
    const auto g = FieldSpec::gaussian_truncated(1.0, 1.0, 0.4, 0.9);
    const int nq = 2000;
    double acc = 0.0;
    const double hq = 2.0 / nq;
    for (int i = 0; i < nq; ++i) {
        for (int j = 0; j < nq; ++j) {
            acc += eval_B(g, -1 + (i + 0.5) * hq, -1 + (j + 0.5) * hq);
        }
    }
    acc *= hq * hq;
    CHECK(flux(g) == doctest::Approx(acc).epsilon(1e-3));
}

TEST_CASE("validate_field verdicts") {
    CHECK(validate_field(FieldSpec::square_bump(1.0, 1.0, 0.5)).ok);
    CHECK(validate_field(FieldSpec::gaussian_truncated(1.0, 1.0, 0.2, 0.5)).ok);
    CHECK_FALSE(validate_field(FieldSpec::square_bump(1.0, 1.0, 2.0)).ok);
    CHECK_FALSE(validate_field(FieldSpec::disk_bump(1.0, 1.0, 0.5, {0.7, 0.0})).ok);
    CHECK_FALSE(validate_field(FieldSpec::gaussian_truncated(1.0, 1.0, 0.2, 1.5)).ok);
    auto bad_scale = FieldSpec::square_bump(1.0, 1.0, 0.5, -1.0);
    CHECK_FALSE(validate_field(bad_scale).ok);
}
