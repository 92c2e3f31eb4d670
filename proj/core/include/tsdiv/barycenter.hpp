#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tsdiv/divergences.hpp"
#include "tsdiv/matrix.hpp"

namespace tsdiv {

/// Objective callback: returns the value at X and fills grad (same shape
/// as X).
using Objective = std::function<double(const Matrix& X, Matrix& grad)>;

struct MinimizeResult {
  Matrix x;
  double value = 0.0;
  int iterations = 0;
  /// Set when a line search could not make progress; the best iterate
  /// found so far is returned instead of failing.
  bool line_search_failed = false;
  /// Objective value at x0 followed by each accepted iterate.
  std::vector<double> trace;
};

/// Quasi-Newton minimization: L-BFGS with history 10 and a strong-Wolfe
/// line search. Stops at max_iters or when the max-abs gradient entry
/// drops to grad_tol.
MinimizeResult minimize(const Objective& objective, const Matrix& x0,
                        int max_iters = 200, double grad_tol = 1e-8);

struct InitScheme {
  enum class Tag {
    /// Default: Euclidean mean for biased kinds; for debiased kinds, the
    /// solution of the biased counterpart started from the Euclidean mean.
    automatic,
    euclidean_mean,
    warm_start_biased,
    explicit_point,
  };
  Tag tag = Tag::automatic;
  Matrix x0; // used by explicit_point

  static InitScheme euclidean_mean_init() { return {Tag::euclidean_mean, {}}; }
  static InitScheme warm_start() { return {Tag::warm_start_biased, {}}; }
  static InitScheme explicit_init(Matrix x) {
    return {Tag::explicit_point, std::move(x)};
  }
};

struct AveragingProblem {
  std::vector<TimeSeries> series;
  /// Empty means the defaults: 1 for equal-length inputs, 1/n_i otherwise.
  std::vector<double> weights;
  DivergenceKind kind{DivergenceKind::Tag::sdtw_div, 10.0};
  CostKind cost = CostKind::squared_euclidean;
  /// 0 means the median input length.
  Index barycenter_length = 0;
  InitScheme init;
};

struct BarycenterResult {
  TimeSeries x;
  std::vector<double> objective_trace;
  int iterations = 0;
  bool line_search_failed = false;
};

/// Fréchet mean: approximately minimizes sum_i w_i kind(X, Y_i) with
/// gradient-based descent.
BarycenterResult frechet_mean(const AveragingProblem& problem, int max_iters = 200);

/// Two-series barycenter with weights (pi, 1 - pi).
BarycenterResult interpolate(const TimeSeries& Y1, const TimeSeries& Y2, double pi,
                             const DivergenceKind& kind, CostKind cost,
                             Index length = 0, int max_iters = 200);

/// Linear resampling of a series to a new number of time steps.
TimeSeries resample(const TimeSeries& series, Index length);

/// Paper defaults: gamma = 1 for biased kinds, gamma = 10 for debiased ones.
double default_gamma(DivergenceKind::Tag tag);

} // namespace tsdiv
