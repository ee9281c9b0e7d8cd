#pragma once

#include <array>
#include <string>

#include "leakywire/geometry.hpp"  // ValidationReport

namespace leakywire {

/// Compactly supported magnetic field B with supp(B) inside Omega = (-a, a)^2.
/// `scale` multiplies the field pointwise (weak-field sweeps).
struct FieldSpec {
    enum class Kind { zero, square_bump, disk_bump, gaussian_truncated };

    double a = 1.0;
    Kind kind = Kind::zero;
    double b = 0.0;        // field strength
    double c = 0.0;        // square_bump half-width, support (-c, c)^2
    double R = 0.0;        // disk_bump radius
    std::array<double, 2> center = {0.0, 0.0};  // disk_bump center
    double sigma = 0.0;    // gaussian width
    double cutoff = 0.0;   // gaussian hard cutoff radius (centered at origin)
    double scale = 1.0;

    static FieldSpec zero(double a);
    static FieldSpec square_bump(double a, double b, double c, double scale = 1.0);
    static FieldSpec disk_bump(double a, double b, double R,
                               std::array<double, 2> center = {0.0, 0.0},
                               double scale = 1.0);
    static FieldSpec gaussian_truncated(double a, double b, double sigma, double cutoff,
                                        double scale = 1.0);

    FieldSpec with_scale(double s) const {
        FieldSpec f = *this;
        f.scale = s;
        return f;
    }
};

/// Pointwise field value; exactly 0 outside Omega.
double eval_B(const FieldSpec& field, double x, double y);

/// Landau-gauge vector potential A(x, y) = (-int_0^y B(x, t) dt, 0), in
/// closed form for every builtin family (erf for the truncated gaussian).
/// Vanishes identically for |x| > a.
std::array<double, 2> landau_A(const FieldSpec& field, double x, double y);

/// Total flux int_Omega B dx dy (closed form for all builtin families).
double flux(const FieldSpec& field);

/// Accepts iff |B| <= 1e-12 on a 256-point ring outside Omega and the
/// geometric parameters keep the support inside Omega.
ValidationReport validate_field(const FieldSpec& field);

/// Thin evaluation handle for the Landau-gauge potential of a field.
struct GaugePotential {
    FieldSpec field;
    std::array<double, 2> at(double x, double y) const { return landau_A(field, x, y); }
};

}  // namespace leakywire
