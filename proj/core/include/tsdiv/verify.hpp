#pragma once

#include <vector>

#include "tsdiv/costs.hpp"
#include "tsdiv/matrix.hpp"

namespace tsdiv {

/// Minimum eigenvalue of the M x M global-alignment-kernel Gram matrix
/// K_ij = exp(-sdtw_1(C(X_i, X_j) / gamma)). Entries are computed in
/// parallel, the matrix is symmetrized to absorb roundoff, and a dense
/// symmetric eigensolver does the rest. M is capped at 2000.
double gram_min_eig(const std::vector<TimeSeries>& series, CostKind cost,
                    double gamma);

struct FourierSeriesResult {
  double value = 0.0;
  /// Tail bound sqrt(pi / (2(N-1))); only available for N >= 2.
  double residual_bound = 0.0;
  bool residual_available = false;
};

/// Truncation (at 2N terms, pairwise-compensated summation) of the Fourier
/// transform of t -> exp(-t^2/2) / (1 + exp(-t^2/2)), the k/(1+k) kernel
/// profile of the Gaussian kernel:
///   value = sum_{n=1}^{2N} (-1)^{n+1} n^{-1/2} exp(-omega^2 / (2n)).
/// A value below -residual_bound certifies the transform is negative at
/// omega, so k/(1+k) is not positive definite.
FourierSeriesResult fourier_gauss_series(double omega, long n_terms);

} // namespace tsdiv
