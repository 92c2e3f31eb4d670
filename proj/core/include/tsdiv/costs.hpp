#pragma once

#include <string>

#include "tsdiv/matrix.hpp"

namespace tsdiv {

/// Ground costs. All three satisfy non-negativity, zero self-diagonal and
/// symmetry. `absolute` is defined for univariate series only.
enum class CostKind {
  squared_euclidean, // (1/2) ||x_i - y_j||^2
  log_augmented,     // delta + log(2 - exp(-delta)), delta = (1/2)||x_i - y_j||^2
  absolute,          // |x_i - y_j|, d = 1
};

std::string to_string(CostKind kind);
CostKind cost_kind_from_string(const std::string& name);

CostMatrix build_cost(CostKind kind, const TimeSeries& X, const TimeSeries& Y);

/// Product of the transposed Jacobian of C(., Y) at X with E.
/// self_mode treats the cost as X -> C(X, X) (Y is ignored), in which case
/// sensitivities flow through both argument slots.
Matrix cost_vjp(CostKind kind, const TimeSeries& X, const TimeSeries& Y,
                const Matrix& E, bool self_mode);

/// Product of the Jacobian of C(., Y) at X with a direction Z (squared
/// Euclidean only). self_mode returns the symmetrized product for C(X, X).
Matrix cost_jvp(CostKind kind, const TimeSeries& X, const TimeSeries& Y,
                const Matrix& Z, bool self_mode);

} // namespace tsdiv
