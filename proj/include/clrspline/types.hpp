#pragma once

#include <Eigen/Dense>

namespace clrspline {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Relative singular-value cutoff used to decide numerical rank.
inline constexpr double kDefaultRcond = 1e-10;

// Relative residual threshold below which a linear system counts as
// consistent.
inline constexpr double kDefaultConsistencyTol = 1e-8;

}  // namespace clrspline
