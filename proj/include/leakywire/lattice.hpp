#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "leakywire/geometry.hpp"
#include "leakywire/magnetic.hpp"

namespace leakywire {

enum class Bc { dirichlet, neumann };

std::string to_string(Bc bc);

/// Truncation box [-L, L]^2 with n nodes per axis (n odd) and spacing
/// h = 2L/(n-1). Dirichlet drops exterior couplings (zero ghost ring);
/// Neumann uses the symmetrized mirror stencil (diagonal = degree/h^2).
struct GridSpec {
    double L = 1.0;
    int n = 33;
    Bc bc = Bc::dirichlet;

    double spacing() const { return 2.0 * L / (n - 1); }
    double coord(int i) const { return -L + i * spacing(); }
    int index(int ix, int iy) const { return ix * n + iy; }
    long size() const { return static_cast<long>(n) * n; }

    /// Structural checks (n odd >= 3, L > 0) plus, when a curve or field is
    /// active, the resolution requirements n >= 33, L >= a, h <= a/8.
    ValidationReport validate(bool interaction_present = false, double a = 0.0) const;

    /// Coarsened grid with doubled spacing (requires (n-1) % 4 == 0).
    GridSpec coarsened() const;
};

/// Sparse Hermitian realization of the discretized operator, with enough
/// metadata to reconstruct its provenance. Immutable after assembly.
struct DiscreteOperator {
    using Scalar = std::complex<double>;
    using Sparse = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

    Sparse matrix;
    double h = 0.0;          // grid spacing
    double alpha = 0.0;      // delta coupling (0 if none)
    Bc bc = Bc::dirichlet;
    int axis_nodes = 0;      // n for 2D grids, node count for 1D
    int space_dim = 2;       // 1 or 2
    bool structured = false; // true for grid assemblies (enables fast solvers)
    double box_L = 0.0;
    std::string curve_id;    // empty if no delta line
    std::string field_id;    // empty if zero field

    long dimension() const { return matrix.rows(); }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return matrix * v; }

    /// max |diag| — the residual scale used by the eigensolver.
    double diag_scale() const;

    /// max |H(i,j) - conj(H(j,i))|; zero by construction.
    double hermiticity_defect() const;

    /// Builds a Hermitian operator from explicit entries (tests, adapters).
    /// Entries may list each off-diagonal pair once; the conjugate is filled in.
    static DiscreteOperator from_triplets(
        long dim, const std::vector<Eigen::Triplet<Scalar>>& entries, double h = 1.0,
        Bc bc = Bc::dirichlet);
};

/// Full Hamiltonian (i grad + A)^2 - alpha * delta_Gamma on the grid box:
/// 5-point stencil with Peierls link phases exp(-i int A.dl) / h^2 (midpoint
/// rule for the edge integral), delta line as diagonal terms -alpha*w/h^2
/// from arc_length_weights. Curve and field must validate; the grid must
/// resolve them. Throws std::invalid_argument / std::runtime_error.
DiscreteOperator assemble_H(const GridSpec& grid, const FieldSpec& field,
                            const CurveSpec& curve, double alpha);

/// Same stencil with a caller-supplied Landau-gauge potential x-component
/// and explicit node weights (the generic core behind assemble_H).
DiscreteOperator assemble_with_potential(
    const GridSpec& grid, const std::function<double(double, double)>& Ax,
    const std::map<std::pair<int, int>, double>& delta_weights, double alpha);

/// Magnetic Neumann Laplacian on Omega = (-a, a)^2 (alpha = 0).
DiscreteOperator assemble_neumann_magnetic_laplacian(double a, const FieldSpec& field,
                                                     int n);

/// 1D operator -d^2/dt^2 - beta * delta(t) on [-L, L]: three-point stencil,
/// Neumann ends, diagonal correction -beta/h at the node nearest t = 0.
DiscreteOperator assemble_1d_delta(double beta, double L, int n);

/// Conjugates hoppings by phases: entry(p,q) -> exp(i(chi_p - chi_q)) entry(p,q).
/// Diagonal unchanged; the spectrum is exactly preserved.
DiscreteOperator gauge_transform(const DiscreteOperator& op,
                                 const std::vector<double>& chi);

/// Matrix Market coordinate export (complex hermitian, lower triangle).
void write_matrix_market(const DiscreteOperator& op, std::ostream& out);
void write_matrix_market(const DiscreteOperator& op, const std::string& path);

}  // namespace leakywire
