#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace leakywire {

/// Interaction-support curve Gamma = {(x, gamma(x))}: coincides with the
/// diagonal y = x outside the window (-a, a) and stays inside the square
/// Omega = (-a, a)^2.
struct CurveSpec {
    enum class Kind { straight, bump, polyline };

    double a = 1.0;            // half-width of the perturbation window
    Kind kind = Kind::straight;
    double h = 0.0;            // bump amplitude (kind == bump)
    std::vector<std::pair<double, double>> vertices;  // kind == polyline
    int sampling_n = 2001;     // sample count for numeric sup computations

    static CurveSpec straight(double a, int sampling_n = 2001);
    static CurveSpec bump(double a, double amplitude, int sampling_n = 2001);
    static CurveSpec polyline(double a, std::vector<std::pair<double, double>> verts,
                              int sampling_n = 2001);
};

struct Violation {
    std::string invariant;  // short name of the violated invariant
    double witness_x = 0.0; // location of the (worst) violation
    double value = 0.0;     // offending value at the witness
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
};

/// gamma(x); equals x for |x| >= a. Total on R once the curve validates.
double eval_gamma(const CurveSpec& curve, double x);

/// One-sided derivative gamma'(x) (right-sided at polyline kinks).
double eval_gamma_prime(const CurveSpec& curve, double x);

/// Checks every CurveSpec invariant on a dense sample; violations carry
/// a witness x.
ValidationReport validate_curve(const CurveSpec& curve);

/// ||gamma'||_inf. Exact for straight and polyline; dense sampling refined
/// by local ternary search (relative accuracy 1e-6) for the bump family.
/// Always >= 1 for a curve matching the line outside (-a, a).
double gamma_prime_sup(const CurveSpec& curve);

struct GridSpec;  // lattice.hpp

/// Column-rasterized arc-length weights: node index (ix, iy) -> weight.
/// Column x_i contributes sqrt(1 + gamma'(x_i)^2) * cell (cell = h, or h/2 at
/// the two boundary columns), linearly split between the two nodes vertically
/// bracketing (x_i, gamma(x_i)). Throws std::runtime_error if the curve exits
/// the grid box.
std::map<std::pair<int, int>, double> arc_length_weights(const CurveSpec& curve,
                                                         const GridSpec& grid);

/// Arc length of Gamma restricted to x in [-L, L] by adaptive Simpson
/// quadrature of sqrt(1 + gamma'^2) (exact for straight/polyline).
double arc_length(const CurveSpec& curve, double L);

}  // namespace leakywire
