#pragma once

#include <Eigen/Dense>

namespace mgmcast {

/// Relative rank cutoff shared by the decompositions below: a matrix whose
/// condition exceeds ~1/kRankThreshold is treated as singular.
inline constexpr double kRankThreshold = 1e-12;

/// G (G^H G)^-1 for a full-column-rank G, computed through a rank-revealing
/// orthogonal decomposition instead of the explicit Gram inverse.
/// Throws SingularMatrixError on rank deficiency.
Eigen::MatrixXcd zf_basis(const Eigen::MatrixXcd& g);

/// Orthonormal basis (thin Q) of span(G); throws SingularMatrixError if G is
/// rank deficient.
Eigen::MatrixXcd orthonormal_span(const Eigen::MatrixXcd& g);

/// (I - Q Q^H) X for an orthonormal Q: projection onto the orthogonal
/// complement of span(Q).
Eigen::MatrixXcd project_out(const Eigen::MatrixXcd& q,
                             const Eigen::MatrixXcd& x);

}  // namespace mgmcast
