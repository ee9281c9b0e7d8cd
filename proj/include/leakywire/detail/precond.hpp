#pragma once

#include <Eigen/Dense>

#include "leakywire/lattice.hpp"

namespace leakywire::detail {

/// Applies (L_free - sigma)^{-1} to each column of R in place, where L_free is
/// the free discrete Laplacian matching the operator's grid, spacing and
/// boundary conditions (DST-I for the Dirichlet ghost-ring stencil, DCT-II for
/// the mirrored Neumann stencil). Requires sigma < 0. Returns false when the
/// operator shape is not grid-structured (caller falls back to Jacobi).
bool apply_free_laplacian_inverse(const DiscreteOperator& op, Eigen::MatrixXcd& R,
                                  double sigma);

}  // namespace leakywire::detail
