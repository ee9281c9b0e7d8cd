#include "leakywire/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leakywire/lattice.hpp"

namespace leakywire {

namespace {

constexpr double kPi = std::numbers::pi;

// Adaptive Simpson with absolute/relative tolerance.
double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(a, b, fa, fm, fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

CurveSpec CurveSpec::straight(double a, int sampling_n) {
    CurveSpec c;
    c.a = a;
    c.kind = Kind::straight;
    c.sampling_n = sampling_n;
    return c;
}

CurveSpec CurveSpec::bump(double a, double amplitude, int sampling_n) {
    CurveSpec c;
    c.a = a;
    c.kind = Kind::bump;
    c.h = amplitude;
    c.sampling_n = sampling_n;
    return c;
}

CurveSpec CurveSpec::polyline(double a, std::vector<std::pair<double, double>> verts,
                              int sampling_n) {
    CurveSpec c;
    c.a = a;
    c.kind = Kind::polyline;
    c.vertices = std::move(verts);
    c.sampling_n = sampling_n;
    return c;
}

double eval_gamma(const CurveSpec& curve, double x) {
    if (std::abs(x) >= curve.a) return x;
    switch (curve.kind) {
        case CurveSpec::Kind::straight:
            return x;
        case CurveSpec::Kind::bump: {
            const double c = std::cos(kPi * x / (2.0 * curve.a));
            return x + curve.h * c * c;
        }
        case CurveSpec::Kind::polyline: {
            const auto& v = curve.vertices;
            for (std::size_t i = 0; i + 1 < v.size(); ++i) {
                if (x >= v[i].first && x <= v[i + 1].first) {
                    const double t = (x - v[i].first) / (v[i + 1].first - v[i].first);
                    return v[i].second + t * (v[i + 1].second - v[i].second);
                }
            }
            return x;  // unreachable for validated curves
        }
    }
    return x;
}

double eval_gamma_prime(const CurveSpec& curve, double x) {
    if (x >= curve.a || x < -curve.a) return 1.0;
    switch (curve.kind) {
        case CurveSpec::Kind::straight:
            return 1.0;
        case CurveSpec::Kind::bump:
            return 1.0 - curve.h * (kPi / (2.0 * curve.a)) * std::sin(kPi * x / curve.a);
        case CurveSpec::Kind::polyline: {
            const auto& v = curve.vertices;
            for (std::size_t i = 0; i + 1 < v.size(); ++i) {
                if (x >= v[i].first && x < v[i + 1].first) {
                    return (v[i + 1].second - v[i].second) /
                           (v[i + 1].first - v[i].first);
                }
            }
            return 1.0;
        }
    }
    return 1.0;
}

ValidationReport validate_curve(const CurveSpec& curve) {
    ValidationReport rep;
    auto fail = [&rep](std::string inv, double x, double val, std::string detail) {
        rep.ok = false;
        rep.violations.push_back({std::move(inv), x, val, std::move(detail)});
    };

    if (!(curve.a > 0.0)) {
        fail("positive_half_width", 0.0, curve.a, "a must be > 0");
        return rep;
    }
    if (curve.sampling_n < 1000) {
        fail("sampling_n", 0.0, static_cast<double>(curve.sampling_n),
             "sampling_n must be >= 1000");
        return rep;
    }

    const double a = curve.a;
    const double tol = 1e-12 * std::max(1.0, a);

    if (curve.kind == CurveSpec::Kind::bump && std::abs(curve.h) > a + tol) {
        fail("bump_amplitude", 0.0, curve.h, "|h| must be <= a");
    }

    if (curve.kind == CurveSpec::Kind::polyline) {
        const auto& v = curve.vertices;
        if (v.size() < 2) {
            fail("polyline_size", 0.0, static_cast<double>(v.size()),
                 "need at least 2 vertices");
            return rep;
        }
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            if (!(v[i + 1].first > v[i].first)) {
                fail("polyline_order", v[i].first, v[i + 1].first,
                     "vertex x-coordinates must be strictly increasing");
            }
        }
        if (v.front().first != -a || v.front().second != -a) {
            fail("polyline_endpoints", v.front().first, v.front().second,
                 "first vertex must equal (-a, -a)");
        }
        if (v.back().first != a || v.back().second != a) {
            fail("polyline_endpoints", v.back().first, v.back().second,
                 "last vertex must equal (a, a)");
        }
        for (const auto& p : v) {
            if (std::abs(p.second) > a + tol) {
                fail("containment", p.first, p.second, "vertex leaves Omega");
            }
        }
    }
    if (!rep.ok) return rep;

    // containment |gamma| <= a on a dense sample of (-a, a)
    double worst = 0.0, worst_x = 0.0;
    for (int i = 0; i < curve.sampling_n; ++i) {
        const double x = -a + (2.0 * a) * (i + 0.5) / curve.sampling_n;
        const double g = eval_gamma(curve, x);
        if (std::abs(g) - a > worst) {
            worst = std::abs(g) - a;
            worst_x = x;
        }
    }
    if (worst > tol) {
        fail("containment", worst_x, eval_gamma(curve, worst_x),
             "|gamma(x)| exceeds a inside the window");
    }

    // gamma(x) = x outside the window (exact)
    for (double x : {-3.0 * a, -a, a, 1.5 * a, 10.0 * a}) {
        if (eval_gamma(curve, x) != x) {
            fail("straight_outside", x, eval_gamma(curve, x),
                 "gamma must equal x for |x| >= a");
        }
    }
    return rep;
}

double gamma_prime_sup(const CurveSpec& curve) {
    switch (curve.kind) {
        case CurveSpec::Kind::straight:
            return 1.0;
        case CurveSpec::Kind::polyline: {
            double sup = 1.0;  // outer slope
            const auto& v = curve.vertices;
            for (std::size_t i = 0; i + 1 < v.size(); ++i) {
                const double s = (v[i + 1].second - v[i].second) /
                                 (v[i + 1].first - v[i].first);
                sup = std::max(sup, std::abs(s));
            }
            return sup;
        }
        case CurveSpec::Kind::bump:
            break;
    }
    // dense sample + local ternary refinement of |gamma'| over [-a, a]
    const double a = curve.a;
    const int n = std::max(curve.sampling_n, 1000);
    auto f = [&](double x) { return std::abs(eval_gamma_prime(curve, x)); };
    double best = 1.0, best_x = -a;
    for (int i = 0; i <= n; ++i) {
        const double x = -a + 2.0 * a * i / n;
        const double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    double lo = std::max(-a, best_x - 2.0 * a / n);
    double hi = std::min(a, best_x + 2.0 * a / n);
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * a; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (f(m1) < f(m2))
            lo = m1;
        else
            hi = m2;
    }
    return std::max({best, f(lo), f(0.5 * (lo + hi)), f(hi), 1.0});
}

std::map<std::pair<int, int>, double> arc_length_weights(const CurveSpec& curve,
                                                         const GridSpec& grid) {
    std::map<std::pair<int, int>, double> weights;
    const int n = grid.n;
    const double L = grid.L;
    const double h = grid.spacing();
    const double tol = 1e-9 * std::max(1.0, L);

    for (int i = 0; i < n; ++i) {
        const double x = grid.coord(i);
        const double y = eval_gamma(curve, x);
        if (y < -L - tol || y > L + tol) {
            throw std::runtime_error("arc_length_weights: curve exits the grid box");
        }
        const double cell = (i == 0 || i == n - 1) ? 0.5 * h : h;
        const double gp = eval_gamma_prime(curve, x);
        const double w = std::sqrt(1.0 + gp * gp) * cell;

        double t = (y + L) / h;
        int j = static_cast<int>(std::floor(t));
        double theta = t - j;
        if (j >= n - 1) {
            j = n - 1;
            theta = 0.0;
        }
        if (j < 0) {
            j = 0;
            theta = 0.0;
        }
        weights[{i, j}] += w * (1.0 - theta);
        if (theta > 0.0) weights[{i, j + 1}] += w * theta;
    }
    return weights;
}

double arc_length(const CurveSpec& curve, double L) {
    const double a = std::min(curve.a, L);
    const double outer = 2.0 * std::sqrt(2.0) * std::max(0.0, L - curve.a);
    switch (curve.kind) {
        case CurveSpec::Kind::straight:
            return 2.0 * std::sqrt(2.0) * L;
        case CurveSpec::Kind::polyline: {
            double len = outer;
            const auto& v = curve.vertices;
            for (std::size_t i = 0; i + 1 < v.size(); ++i) {
                const double dx = v[i + 1].first - v[i].first;
                const double dy = v[i + 1].second - v[i].second;
                len += std::hypot(dx, dy);
            }
            return len;
        }
        case CurveSpec::Kind::bump: {
            auto f = [&](double x) {
                const double gp = eval_gamma_prime(curve, x);
                return std::sqrt(1.0 + gp * gp);
            };
            return outer + adaptive_simpson(f, -a, a, 1e-11);
        }
    }
    return outer;
}

}  // namespace leakywire
