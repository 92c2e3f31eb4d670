#pragma once

#include <Eigen/Core>

namespace tsdiv {

/// Dense double matrix used throughout the library.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// A time series is an m x d matrix: rows are time steps, columns are
/// feature dimensions.
using TimeSeries = Matrix;

/// Cost matrix C(X, Y): m x n, entry (i, j) is the ground cost between
/// time step i of X and time step j of Y.
using CostMatrix = Matrix;

/// Binary monotonic path matrix (stored as 0/1 doubles so inner products
/// with cost matrices are direct).
using AlignmentMatrix = Matrix;

/// Real-valued relaxation of an alignment: cell-visit marginals in (0, 1].
using ExpectedAlignment = Matrix;

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

} // namespace tsdiv
