#include "tsdiv/costs.hpp"

#include <cmath>
#include <stdexcept>

namespace tsdiv {

namespace {

void check_pair(const TimeSeries& X, const TimeSeries& Y) {
  if (X.rows() < 1 || Y.rows() < 1)
    throw std::invalid_argument("time series must have at least one time step");
  if (X.cols() != Y.cols())
    throw std::invalid_argument("time series dimensions differ");
  if (!all_finite(X) || !all_finite(Y))
    throw std::invalid_argument("time series has non-finite entries");
}

double sq_dist(const TimeSeries& X, const TimeSeries& Y, Index i, Index j) {
  return 0.5 * (X.row(i) - Y.row(j)).squaredNorm();
}

// d/d(delta) of delta + log(2 - exp(-delta)).
double log_augmented_scale(double delta) {
  const double e = std::exp(-delta);
  return 1.0 + e / (2.0 - e);
}

} // namespace

std::string to_string(CostKind kind) {
  switch (kind) {
    case CostKind::squared_euclidean: return "sqeuclid";
    case CostKind::log_augmented: return "logeuclid";
    case CostKind::absolute: return "absolute";
  }
  return "?";
}

CostKind cost_kind_from_string(const std::string& name) {
  if (name == "sqeuclid" || name == "squared_euclidean") return CostKind::squared_euclidean;
  if (name == "logeuclid" || name == "log_augmented") return CostKind::log_augmented;
  if (name == "absolute" || name == "abs") return CostKind::absolute;
  throw std::invalid_argument("unknown cost kind: " + name);
}

CostMatrix build_cost(CostKind kind, const TimeSeries& X, const TimeSeries& Y) {
  check_pair(X, Y);
  if (kind == CostKind::absolute && X.cols() != 1)
    throw std::invalid_argument("absolute cost is defined for univariate series only");

  const Index m = X.rows(), n = Y.rows();
  CostMatrix C(m, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      switch (kind) {
        case CostKind::squared_euclidean:
          C(i, j) = sq_dist(X, Y, i, j);
          break;
        case CostKind::log_augmented: {
          const double delta = sq_dist(X, Y, i, j);
          C(i, j) = delta + std::log(2.0 - std::exp(-delta));
          break;
        }
        case CostKind::absolute:
          C(i, j) = std::abs(X(i, 0) - Y(j, 0));
          break;
      }
    }
  }
  return C;
}

Matrix cost_vjp(CostKind kind, const TimeSeries& X, const TimeSeries& Y_in,
                const Matrix& E, bool self_mode) {
  const TimeSeries& Y = self_mode ? X : Y_in;
  check_pair(X, Y);
  if (E.rows() != X.rows() || E.cols() != Y.rows())
    throw std::invalid_argument("E dimensions do not match the cost matrix");
  if (kind == CostKind::absolute && X.cols() != 1)
    throw std::invalid_argument("absolute cost is defined for univariate series only");

  const Index m = X.rows(), n = Y.rows(), d = X.cols();

  if (kind == CostKind::absolute) {
    Matrix out = Matrix::Zero(m, 1);
    for (Index i = 0; i < m; ++i) {
      double acc = 0.0;
      for (Index j = 0; j < n; ++j) {
        const double w = self_mode ? E(i, j) + E(j, i) : E(i, j);
        const double diff = X(i, 0) - Y(j, 0);
        // subgradient 0 at the kink
        acc += w * (diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0));
      }
      out(i, 0) = acc;
    }
    return out;
  }

  // Squared-Euclidean VJP, with the log-augmented chain-rule factor folded
  // into the weights per cell.
  Matrix W;
  if (kind == CostKind::squared_euclidean) {
    W = E;
  } else {
    W.resize(m, n);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j)
        W(i, j) = E(i, j) * log_augmented_scale(sq_dist(X, Y, i, j));
  }
  if (self_mode) W = (W + W.transpose()).eval();

  const Vector row_sums = W.rowwise().sum();
  Matrix out = X;
  for (Index k = 0; k < d; ++k) out.col(k).array() *= row_sums.array();
  out.noalias() -= W * Y;
  return out;
}

Matrix cost_jvp(CostKind kind, const TimeSeries& X, const TimeSeries& Y_in,
                const Matrix& Z, bool self_mode) {
  if (kind != CostKind::squared_euclidean)
    throw std::invalid_argument(
        "cost_jvp is not implemented for cost kind '" + to_string(kind) +
        "' (squared Euclidean only)");
  const TimeSeries& Y = self_mode ? X : Y_in;
  check_pair(X, Y);
  if (Z.rows() != X.rows() || Z.cols() != X.cols())
    throw std::invalid_argument("Z dimensions do not match X");

  const Index m = X.rows(), n = Y.rows();
  Vector row_dots(m);
  for (Index i = 0; i < m; ++i) row_dots(i) = X.row(i).dot(Z.row(i));
  Matrix cross = row_dots.replicate(1, n);
  cross.noalias() -= Z * Y.transpose();
  if (!self_mode) return cross;
  return cross + cross.transpose().eval();
}

} // namespace tsdiv
