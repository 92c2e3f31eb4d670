#include "tsdiv/verify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "tsdiv/alignment_dp.hpp"
#include "tsdiv/errors.hpp"
#include "tsdiv/parallel.hpp"

namespace tsdiv {

double gram_min_eig(const std::vector<TimeSeries>& series, CostKind cost,
                    double gamma) {
  const Index M = static_cast<Index>(series.size());
  if (M < 1) throw std::invalid_argument("gram_min_eig needs at least one series");
  if (M > 2000) throw std::invalid_argument("gram_min_eig is capped at 2000 series");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");

  Matrix K(M, M);
  std::vector<std::pair<Index, Index>> pairs;
  pairs.reserve(static_cast<std::size_t>(M * (M + 1) / 2));
  for (Index i = 0; i < M; ++i)
    for (Index j = i; j < M; ++j) pairs.emplace_back(i, j);

  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    const CostMatrix C = build_cost(cost, series[static_cast<std::size_t>(i)],
                                    series[static_cast<std::size_t>(j)]);
    const double value = std::exp(-soft_dtw_forward(C / gamma, 1.0).value);
    K(i, j) = value;
    K(j, i) = value;
  });

  if (!all_finite(K))
    throw NumericalError(
        "global alignment kernel overflowed; try a larger gamma");

  const Matrix sym = 0.5 * (K + K.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigenvalue decomposition of the Gram matrix failed");
  return solver.eigenvalues().minCoeff();
}

FourierSeriesResult fourier_gauss_series(double omega, long n_terms) {
  if (n_terms < 1) throw std::invalid_argument("N must be at least 1");
  const double w2 = omega * omega;

  // Consecutive terms are paired (odd minus even) and the pair sums are
  // Kahan-compensated, smallest pairs first.
  double sum = 0.0, carry = 0.0;
  for (long k = n_terms; k >= 1; --k) {
    const double n1 = 2.0 * static_cast<double>(k) - 1.0;
    const double n2 = n1 + 1.0;
    const double term = std::exp(-w2 / (2.0 * n1)) / std::sqrt(n1) -
                        std::exp(-w2 / (2.0 * n2)) / std::sqrt(n2);
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }

  FourierSeriesResult out;
  out.value = sum;
  if (n_terms >= 2) {
    out.residual_bound =
        std::sqrt(std::numbers::pi / (2.0 * (static_cast<double>(n_terms) - 1.0)));
    out.residual_available = true;
  }
  return out;
}

} // namespace tsdiv
