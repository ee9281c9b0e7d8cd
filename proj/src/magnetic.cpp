#include "leakywire/magnetic.hpp"

#include <cmath>
#include <numbers>

namespace leakywire {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSupportTol = 1e-12;
}  // namespace

FieldSpec FieldSpec::zero(double a) {
    FieldSpec f;
    f.a = a;
    f.kind = Kind::zero;
    return f;
}

FieldSpec FieldSpec::square_bump(double a, double b, double c, double scale) {
    FieldSpec f;
    f.a = a;
    f.kind = Kind::square_bump;
    f.b = b;
    f.c = c;
    f.scale = scale;
    return f;
}

FieldSpec FieldSpec::disk_bump(double a, double b, double R, std::array<double, 2> center,
                               double scale) {
    FieldSpec f;
    f.a = a;
    f.kind = Kind::disk_bump;
    f.b = b;
    f.R = R;
    f.center = center;
    f.scale = scale;
    return f;
}

FieldSpec FieldSpec::gaussian_truncated(double a, double b, double sigma, double cutoff,
                                        double scale) {
    FieldSpec f;
    f.a = a;
    f.kind = Kind::gaussian_truncated;
    f.b = b;
    f.sigma = sigma;
    f.cutoff = cutoff;
    f.scale = scale;
    return f;
}

double eval_B(const FieldSpec& field, double x, double y) {
    switch (field.kind) {
        case FieldSpec::Kind::zero:
            return 0.0;
        case FieldSpec::Kind::square_bump:
            return (std::abs(x) < field.c && std::abs(y) < field.c)
                       ? field.scale * field.b
                       : 0.0;
        case FieldSpec::Kind::disk_bump: {
            const double dx = x - field.center[0];
            const double dy = y - field.center[1];
            return (dx * dx + dy * dy < field.R * field.R) ? field.scale * field.b : 0.0;
        }
        case FieldSpec::Kind::gaussian_truncated: {
            const double r2 = x * x + y * y;
            if (r2 > field.cutoff * field.cutoff) return 0.0;
            return field.scale * field.b *
                   std::exp(-r2 / (2.0 * field.sigma * field.sigma));
        }
    }
    return 0.0;
}

std::array<double, 2> landau_A(const FieldSpec& field, double x, double y) {
    double integral = 0.0;  // int_0^y B(x, t) dt, closed form per family
    switch (field.kind) {
        case FieldSpec::Kind::zero:
            break;
        case FieldSpec::Kind::square_bump: {
            if (std::abs(x) < field.c) {
                integral = field.b * std::clamp(y, -field.c, field.c);
            }
            break;
        }
        case FieldSpec::Kind::disk_bump: {
            const double dx = x - field.center[0];
            if (std::abs(dx) < field.R) {
                const double d = std::sqrt(field.R * field.R - dx * dx);
                const double lo = field.center[1] - d;
                const double hi = field.center[1] + d;
                integral = field.b * (std::clamp(y, lo, hi) - std::clamp(0.0, lo, hi));
            }
            break;
        }
        case FieldSpec::Kind::gaussian_truncated: {
            if (std::abs(x) < field.cutoff) {
                const double T = std::sqrt(field.cutoff * field.cutoff - x * x);
                const double yc = std::clamp(y, -T, T);
                const double s = field.sigma;
                integral = field.b * std::exp(-x * x / (2.0 * s * s)) * s *
                           std::sqrt(kPi / 2.0) * std::erf(yc / (s * std::sqrt(2.0)));
            }
            break;
        }
    }
    return {-field.scale * integral, 0.0};
}

double flux(const FieldSpec& field) {
    switch (field.kind) {
        case FieldSpec::Kind::zero:
            return 0.0;
        case FieldSpec::Kind::square_bump:
            return field.scale * field.b * (2.0 * field.c) * (2.0 * field.c);
        case FieldSpec::Kind::disk_bump:
            return field.scale * field.b * kPi * field.R * field.R;
        case FieldSpec::Kind::gaussian_truncated: {
            const double s2 = field.sigma * field.sigma;
            const double r2 = field.cutoff * field.cutoff;
            return field.scale * field.b * 2.0 * kPi * s2 *
                   (1.0 - std::exp(-r2 / (2.0 * s2)));
        }
    }
    return 0.0;
}

ValidationReport validate_field(const FieldSpec& field) {
    ValidationReport rep;
    auto fail = [&rep](std::string inv, double x, double val, std::string detail) {
        rep.ok = false;
        rep.violations.push_back({std::move(inv), x, val, std::move(detail)});
    };

    if (!(field.a > 0.0)) {
        fail("positive_half_width", 0.0, field.a, "a must be > 0");
        return rep;
    }
    if (!(field.scale >= 0.0) || !std::isfinite(field.scale)) {
        fail("scale", 0.0, field.scale, "scale must be finite and >= 0");
    }
    if (!std::isfinite(field.b)) {
        fail("finite_strength", 0.0, field.b, "b must be finite");
    }

    const double a = field.a;
    switch (field.kind) {
        case FieldSpec::Kind::zero:
            break;
        case FieldSpec::Kind::square_bump:
            if (!(field.c > 0.0 && field.c <= a)) {
                fail("support_in_omega", 0.0, field.c,
                     "square_bump needs 0 < c <= a");
            }
            break;
        case FieldSpec::Kind::disk_bump: {
            const double reach =
                std::max(std::abs(field.center[0]), std::abs(field.center[1])) + field.R;
            if (!(field.R > 0.0) || reach > a) {
                fail("support_in_omega", field.center[0], reach,
                     "disk must satisfy max(|cx|,|cy|) + R <= a");
            }
            break;
        }
        case FieldSpec::Kind::gaussian_truncated:
            if (!(field.sigma > 0.0)) {
                fail("gaussian_width", 0.0, field.sigma, "sigma must be > 0");
            }
            if (!(field.cutoff > 0.0 && field.cutoff <= a)) {
                fail("support_in_omega", 0.0, field.cutoff,
                     "gaussian cutoff must satisfy 0 < cutoff <= a");
            }
            break;
    }

    // 256-point ring just outside Omega
    const double r = 1.1 * std::sqrt(2.0) * a;
    for (int i = 0; i < 256; ++i) {
        const double th = 2.0 * kPi * i / 256.0;
        const double x = r * std::cos(th);
        const double y = r * std::sin(th);
        if (std::abs(eval_B(field, x, y)) > kSupportTol) {
            fail("compact_support", x, eval_B(field, x, y),
                 "|B| must vanish on a ring outside Omega");
            break;
        }
    }
    return rep;
}

}  // namespace leakywire
