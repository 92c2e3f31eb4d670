#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tsdiv/matrix.hpp"

namespace tsdiv {

using BigInt = boost::multiprecision::cpp_int;

/// Per-cell predecessor probabilities of the Gibbs random walk over the
/// alignment DAG. Component order matches the soft-min argument order:
/// 0 = left (i, j-1), 1 = diagonal (i-1, j-1), 2 = up (i-1, j).
/// Border cells have zero weight on components pointing outside the grid.
struct TransitionTensor {
  Index rows = 0;
  Index cols = 0;
  /// Smoothing the tensor was built with: gamma > 0 for a Gibbs walk,
  /// gamma == 0 for the 0/1 indicator of the tie-broken optimal path.
  double gamma = 0.0;
  std::vector<double> data; // rows * cols * 3, row-major cells

  double p(Index i, Index j, int k) const {
    return data[static_cast<std::size_t>((i * cols + j) * 3 + k)];
  }
  double& p(Index i, Index j, int k) {
    return data[static_cast<std::size_t>((i * cols + j) * 3 + k)];
  }
};

struct SoftDtwResult {
  double value = 0.0;
  TransitionTensor transitions;
};

struct HardDtwResult {
  double value = 0.0;
  AlignmentMatrix path;
};

struct DirectionalDerivative {
  double value = 0.0; // <E, Z>
  Matrix vdot;        // intermediate table consumed by hessian_product
};

struct AlignmentCount {
  BigInt count;
  TransitionTensor transitions; // uniform distribution over paths
};

struct MeanCostResult {
  double value = 0.0;
  ExpectedAlignment mean_alignment; // E[A] under the uniform distribution
};

/// Minimum alignment cost and a minimizing monotonic path. Ties during
/// backtracking go to the first minimal predecessor in (left, diag, up)
/// order, so results are deterministic.
HardDtwResult hard_dtw(const CostMatrix& C);

/// Smoothed-min dynamic program. gamma > 0 returns the soft-DTW value
/// -gamma log sum_A exp(-<A,C>/gamma) plus the Gibbs transition tensor;
/// gamma == 0 returns the hard DTW value with one-hot transitions.
/// Every soft-min is evaluated max-shifted so nothing overflows.
SoftDtwResult soft_dtw_forward(const CostMatrix& C, double gamma);

/// Backward pass over a transition tensor: cell-visit marginal
/// probabilities. For tensors from soft_dtw_forward this is the gradient
/// of the soft-DTW value in C.
ExpectedAlignment expected_alignment(const TransitionTensor& transitions);

/// Forward differentiation through the DP: returns <E, Z> and the
/// intermediate table needed for Hessian products.
DirectionalDerivative directional_derivative(const TransitionTensor& transitions,
                                             const Matrix& Z);

/// Hessian-vector product of the soft-DTW value in C applied to Z.
/// Requires vdot from directional_derivative(transitions, Z) and
/// E from expected_alignment(transitions); transitions must have gamma > 0.
Matrix hessian_product(const TransitionTensor& transitions, const Matrix& vdot,
                       const ExpectedAlignment& E, const Matrix& Z);

/// Number of monotonic alignments of an m x n grid (the Delannoy number
/// Delannoy(m-1, n-1), exact) together with the transition tensor of the
/// uniform distribution over those paths. Transition probabilities are
/// computed from log-counts so they stay finite at any grid size.
AlignmentCount alignment_count(Index m, Index n);

/// Average of <A, C> over all monotonic alignments, plus the uniform
/// expected alignment (which is also the gradient of the mean cost in C).
MeanCostResult mean_cost(const CostMatrix& C);

} // namespace tsdiv
