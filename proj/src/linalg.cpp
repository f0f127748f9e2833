#include "mgmcast/linalg.hpp"

#include "mgmcast/errors.hpp"

namespace mgmcast {

Eigen::MatrixXcd zf_basis(const Eigen::MatrixXcd& g) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
  cod.setThreshold(kRankThreshold);
  cod.compute(g);
  if (cod.rank() < g.cols()) {
    throw SingularMatrixError("stacked estimate matrix is rank deficient");
  }
  // pinv(G) = (G^H G)^-1 G^H when G has full column rank, so
  // G (G^H G)^-1 = pinv(G)^H.
  return cod.pseudoInverse().adjoint();
}

Eigen::MatrixXcd orthonormal_span(const Eigen::MatrixXcd& g) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr;
  qr.setThreshold(kRankThreshold);
  qr.compute(g);
  if (qr.rank() < g.cols()) {
    throw SingularMatrixError("projection target matrix is rank deficient");
  }
  return qr.householderQ() *
         Eigen::MatrixXcd::Identity(g.rows(), g.cols());
}

Eigen::MatrixXcd project_out(const Eigen::MatrixXcd& q,
                             const Eigen::MatrixXcd& x) {
  if (q.cols() == 0) return x;
  return x - q * (q.adjoint() * x);
}

}  // namespace mgmcast
