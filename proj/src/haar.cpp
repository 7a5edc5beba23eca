#include "rmpslab/haar.hpp"

#include <cmath>
#include <stdexcept>

#include "rmpslab/tensor.hpp"

namespace rmpslab {

Eigen::MatrixXcd sample_haar_unitary(int q, RngStream& rng) {
  if (q < 1) throw std::invalid_argument("sample_haar_unitary: q must be >= 1");
  Eigen::MatrixXcd g(q, q);
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < q; ++c) g(r, c) = rng.complex_gaussian();

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(q, q);
  const Eigen::MatrixXcd& QR = qr.matrixQR();
  // absorb R's diagonal phases into Q; without this the QR gauge biases Q
  // away from Haar measure
  for (int j = 0; j < q; ++j) {
    const cplx r = QR(j, j);
    const double a = std::abs(r);
    Q.col(j) *= (a > 0.0) ? r / a : cplx{1.0, 0.0};
  }
  return Q;
}

}  // namespace rmpslab
