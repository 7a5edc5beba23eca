#pragma once
// Haar-distributed unitaries via complex Ginibre + QR with the R-diagonal
// phase correction (plain QR is not Haar: the gauge freedom in R's diagonal
// phases biases Q).

#include <Eigen/Dense>

#include "rmpslab/rng.hpp"

namespace rmpslab {

Eigen::MatrixXcd sample_haar_unitary(int q, RngStream& rng);

}  // namespace rmpslab
