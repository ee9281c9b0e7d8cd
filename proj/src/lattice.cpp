#include "leakywire/lattice.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace leakywire {

using Scalar = DiscreteOperator::Scalar;
using Triplet = Eigen::Triplet<Scalar>;

std::string to_string(Bc bc) { return bc == Bc::dirichlet ? "dirichlet" : "neumann"; }

ValidationReport GridSpec::validate(bool interaction_present, double a) const {
    ValidationReport rep;
    auto fail = [&rep](std::string inv, double val, std::string detail) {
        rep.ok = false;
        rep.violations.push_back({std::move(inv), 0.0, val, std::move(detail)});
    };
    if (!(L > 0.0)) fail("positive_box", L, "L must be > 0");
    if (n < 3 || n % 2 == 0) fail("odd_nodes", n, "n must be odd and >= 3");
    if (interaction_present) {
        if (n < 33) fail("resolution_n", n, "n must be >= 33 with a curve or field");
        if (L < a - 1e-12) fail("box_covers_omega", L, "L must be >= a");
        if (spacing() > a / 8.0 + 1e-12) {
            fail("resolution_h", spacing(), "h must be <= a/8 to resolve Omega");
        }
    }
    return rep;
}

GridSpec GridSpec::coarsened() const {
    if ((n - 1) % 4 != 0) {
        throw std::invalid_argument("GridSpec::coarsened requires (n-1) % 4 == 0");
    }
    return GridSpec{L, (n + 1) / 2, bc};
}

double DiscreteOperator::diag_scale() const {
    double s = 0.0;
    for (long i = 0; i < matrix.rows(); ++i) {
        s = std::max(s, std::abs(matrix.coeff(i, i)));
    }
    return s;
}

double DiscreteOperator::hermiticity_defect() const {
    const Sparse adj = matrix.adjoint();
    double defect = 0.0;
    for (int k = 0; k < matrix.outerSize(); ++k) {
        Sparse::InnerIterator it(matrix, k);
        Sparse::InnerIterator jt(adj, k);
        for (; it; ++it, ++jt) {
            if (!jt || jt.index() != it.index()) return std::abs(it.value());
            defect = std::max(defect, std::abs(it.value() - jt.value()));
        }
    }
    return defect;
}

DiscreteOperator DiscreteOperator::from_triplets(long dim,
                                                 const std::vector<Triplet>& entries,
                                                 double h, Bc bc) {
    std::vector<Triplet> full;
    full.reserve(entries.size() * 2);
    for (const auto& t : entries) {
        if (t.row() == t.col()) {
            if (std::abs(t.value().imag()) > 1e-15 * std::abs(t.value())) {
                throw std::invalid_argument("diagonal entries must be real");
            }
            full.emplace_back(t.row(), t.col(), Scalar(t.value().real(), 0.0));
        } else {
            full.push_back(t);
            full.emplace_back(t.col(), t.row(), std::conj(t.value()));
        }
    }
    DiscreteOperator op;
    op.matrix.resize(dim, dim);
    op.matrix.setFromTriplets(full.begin(), full.end());
    op.matrix.makeCompressed();
    op.h = h;
    op.bc = bc;
    op.space_dim = 1;
    op.axis_nodes = static_cast<int>(dim);
    return op;
}

DiscreteOperator assemble_with_potential(
    const GridSpec& grid, const std::function<double(double, double)>& Ax,
    const std::map<std::pair<int, int>, double>& delta_weights, double alpha) {
    const int n = grid.n;
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);
    const long N = grid.size();

    std::vector<Triplet> trips;
    trips.reserve(4 * static_cast<std::size_t>(N) + N);

    for (int ix = 0; ix < n; ++ix) {
        const double x = grid.coord(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double y = grid.coord(iy);
            const int p = grid.index(ix, iy);
            if (ix + 1 < n) {
                const int q = grid.index(ix + 1, iy);
                Scalar hop(-inv_h2, 0.0);
                if (Ax) {
                    const double phi = Ax(x + 0.5 * h, y) * h;  // midpoint edge integral
                    hop = -std::polar(inv_h2, -phi);
                }
                trips.emplace_back(p, q, hop);
                trips.emplace_back(q, p, std::conj(hop));
            }
            if (iy + 1 < n) {
                const int q = grid.index(ix, iy + 1);
                const Scalar hop(-inv_h2, 0.0);  // A_y = 0 in the Landau gauge
                trips.emplace_back(p, q, hop);
                trips.emplace_back(q, p, hop);
            }
        }
    }

    std::vector<double> diag(N, 0.0);
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            if (grid.bc == Bc::dirichlet) {
                diag[grid.index(ix, iy)] = 4.0 * inv_h2;
            } else {
                const int deg = (ix > 0) + (ix + 1 < n) + (iy > 0) + (iy + 1 < n);
                diag[grid.index(ix, iy)] = deg * inv_h2;
            }
        }
    }
    for (const auto& [node, w] : delta_weights) {
        const auto [ix, iy] = node;
        if (ix < 0 || ix >= n || iy < 0 || iy >= n) {
            throw std::runtime_error("delta weight outside the grid");
        }
        diag[grid.index(ix, iy)] += -alpha * w * inv_h2;
    }
    for (long p = 0; p < N; ++p) trips.emplace_back(p, p, Scalar(diag[p], 0.0));

    DiscreteOperator op;
    op.matrix.resize(N, N);
    op.matrix.setFromTriplets(trips.begin(), trips.end());
    op.matrix.makeCompressed();
    op.h = h;
    op.alpha = alpha;
    op.bc = grid.bc;
    op.axis_nodes = n;
    op.space_dim = 2;
    op.structured = true;
    op.box_L = grid.L;
    return op;
}

namespace {

std::string curve_tag(const CurveSpec& c) {
    char buf[128];
    switch (c.kind) {
        case CurveSpec::Kind::straight:
            std::snprintf(buf, sizeof buf, "straight(a=%g)", c.a);
            break;
        case CurveSpec::Kind::bump:
            std::snprintf(buf, sizeof buf, "bump(a=%g,h=%g)", c.a, c.h);
            break;
        case CurveSpec::Kind::polyline:
            std::snprintf(buf, sizeof buf, "polyline(a=%g,%zu vertices)", c.a,
                          c.vertices.size());
            break;
    }
    return buf;
}

std::string field_tag(const FieldSpec& f) {
    char buf[160];
    switch (f.kind) {
        case FieldSpec::Kind::zero:
            std::snprintf(buf, sizeof buf, "zero(a=%g)", f.a);
            break;
        case FieldSpec::Kind::square_bump:
            std::snprintf(buf, sizeof buf, "square_bump(a=%g,b=%g,c=%g,s=%g)", f.a, f.b,
                          f.c, f.scale);
            break;
        case FieldSpec::Kind::disk_bump:
            std::snprintf(buf, sizeof buf, "disk_bump(a=%g,b=%g,R=%g,c=(%g,%g),s=%g)",
                          f.a, f.b, f.R, f.center[0], f.center[1], f.scale);
            break;
        case FieldSpec::Kind::gaussian_truncated:
            std::snprintf(buf, sizeof buf, "gaussian(a=%g,b=%g,sigma=%g,cut=%g,s=%g)",
                          f.a, f.b, f.sigma, f.cutoff, f.scale);
            break;
    }
    return buf;
}

bool field_active(const FieldSpec& f) {
    return f.kind != FieldSpec::Kind::zero && f.b != 0.0 && f.scale != 0.0;
}

void require_valid(const ValidationReport& rep, const std::string& what) {
    if (rep.ok) return;
    std::ostringstream oss;
    oss << what << " failed validation:";
    for (const auto& v : rep.violations) oss << " [" << v.invariant << "] " << v.detail;
    throw std::invalid_argument(oss.str());
}

}  // namespace

DiscreteOperator assemble_H(const GridSpec& grid, const FieldSpec& field,
                            const CurveSpec& curve, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
    require_valid(validate_curve(curve), "curve");
    require_valid(validate_field(field), "field");
    if (std::abs(curve.a - field.a) > 1e-12 * std::max(1.0, curve.a)) {
        throw std::invalid_argument("curve and field must share the same window a");
    }
    const bool active = alpha > 0.0 || field_active(field);
    require_valid(grid.validate(active, curve.a), "grid");

    std::map<std::pair<int, int>, double> weights;
    if (alpha > 0.0) weights = arc_length_weights(curve, grid);

    std::function<double(double, double)> Ax;
    if (field_active(field)) {
        Ax = [field](double x, double y) { return landau_A(field, x, y)[0]; };
    }
    DiscreteOperator op = assemble_with_potential(grid, Ax, weights, alpha);
    op.curve_id = alpha > 0.0 ? curve_tag(curve) : "";
    op.field_id = field_active(field) ? field_tag(field) : "";
    return op;
}

DiscreteOperator assemble_neumann_magnetic_laplacian(double a, const FieldSpec& field,
                                                     int n) {
    require_valid(validate_field(field), "field");
    const GridSpec grid{a, n, Bc::neumann};
    require_valid(grid.validate(field_active(field), a), "grid");
    std::function<double(double, double)> Ax;
    if (field_active(field)) {
        Ax = [field](double x, double y) { return landau_A(field, x, y)[0]; };
    }
    DiscreteOperator op = assemble_with_potential(grid, Ax, {}, 0.0);
    op.field_id = field_active(field) ? field_tag(field) : "";
    return op;
}

DiscreteOperator assemble_1d_delta(double beta, double L, int n) {
    if (!(beta > 0.0)) throw std::invalid_argument("assemble_1d_delta: beta must be > 0");
    if (L < 20.0 / beta - 1e-9) {
        throw std::invalid_argument("assemble_1d_delta: L must be >= 20/beta");
    }
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("assemble_1d_delta: n must be odd and >= 3");
    }
    const double h = 2.0 * L / (n - 1);
    const double inv_h2 = 1.0 / (h * h);
    std::vector<Triplet> trips;
    trips.reserve(3 * n);
    for (int i = 0; i < n; ++i) {
        const int deg = (i > 0) + (i + 1 < n);
        double d = deg * inv_h2;
        if (i == (n - 1) / 2) d += -beta / h;  // node nearest t = 0
        trips.emplace_back(i, i, Scalar(d, 0.0));
        if (i + 1 < n) {
            trips.emplace_back(i, i + 1, Scalar(-inv_h2, 0.0));
            trips.emplace_back(i + 1, i, Scalar(-inv_h2, 0.0));
        }
    }
    DiscreteOperator op;
    op.matrix.resize(n, n);
    op.matrix.setFromTriplets(trips.begin(), trips.end());
    op.matrix.makeCompressed();
    op.h = h;
    op.alpha = beta;
    op.bc = Bc::neumann;
    op.axis_nodes = n;
    op.space_dim = 1;
    op.structured = true;
    op.box_L = L;
    return op;
}

DiscreteOperator gauge_transform(const DiscreteOperator& op,
                                 const std::vector<double>& chi) {
    if (static_cast<long>(chi.size()) != op.dimension()) {
        throw std::invalid_argument("gauge_transform: chi size mismatch");
    }
    DiscreteOperator out = op;
    for (int row = 0; row < out.matrix.outerSize(); ++row) {
        for (DiscreteOperator::Sparse::InnerIterator it(out.matrix, row); it; ++it) {
            if (it.row() != it.col()) {
                it.valueRef() *= std::polar(1.0, chi[it.row()] - chi[it.col()]);
            }
        }
    }
    return out;
}

void write_matrix_market(const DiscreteOperator& op, std::ostream& out) {
    const auto& M = op.matrix;
    long nnz_lower = 0;
    for (int row = 0; row < M.outerSize(); ++row) {
        for (DiscreteOperator::Sparse::InnerIterator it(M, row); it; ++it) {
            if (it.row() >= it.col()) ++nnz_lower;
        }
    }
    out << "%%MatrixMarket matrix coordinate complex hermitian\n";
    out << "% leakywire discrete operator";
    if (!op.curve_id.empty()) out << " curve=" << op.curve_id;
    if (!op.field_id.empty()) out << " field=" << op.field_id;
    out << " bc=" << to_string(op.bc) << " h=" << op.h << "\n";
    out << M.rows() << " " << M.cols() << " " << nnz_lower << "\n";
    char buf[128];
    for (int row = 0; row < M.outerSize(); ++row) {
        for (DiscreteOperator::Sparse::InnerIterator it(M, row); it; ++it) {
            if (it.row() < it.col()) continue;
            std::snprintf(buf, sizeof buf, "%ld %ld %.17g %.17g\n",
                          static_cast<long>(it.row()) + 1,
                          static_cast<long>(it.col()) + 1, it.value().real(),
                          it.value().imag());
            out << buf;
        }
    }
}

void write_matrix_market(const DiscreteOperator& op, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_matrix_market(op, f);
}

}  // namespace leakywire
