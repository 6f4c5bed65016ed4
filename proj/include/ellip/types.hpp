#pragma once

#include <Eigen/Core>

namespace ellip {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Coefficients in a subspace of at most two directions (no heap storage).
using SubspaceCoeffs = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 2, 1>;

}  // namespace ellip
