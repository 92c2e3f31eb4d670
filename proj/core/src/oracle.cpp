#include "tsdiv/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "tsdiv/alignment_dp.hpp"

namespace tsdiv {

namespace {
constexpr std::uint64_t kEnumerationGuard = 1000000;

void dfs(Index i, Index j, Index m, Index n, AlignmentMatrix& cells,
         std::vector<AlignmentMatrix>& out) {
  if (i == m - 1 && j == n - 1) {
    out.push_back(cells);
    return;
  }
  if (j + 1 < n) { // right
    cells(i, j + 1) = 1.0;
    dfs(i, j + 1, m, n, cells, out);
    cells(i, j + 1) = 0.0;
  }
  if (i + 1 < m && j + 1 < n) { // diagonal
    cells(i + 1, j + 1) = 1.0;
    dfs(i + 1, j + 1, m, n, cells, out);
    cells(i + 1, j + 1) = 0.0;
  }
  if (i + 1 < m) { // down
    cells(i + 1, j) = 1.0;
    dfs(i + 1, j, m, n, cells, out);
    cells(i + 1, j) = 0.0;
  }
}
} // namespace

std::vector<AlignmentMatrix> enumerate_alignments(Index m, Index n) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("enumerate_alignments requires m >= 1 and n >= 1");
  const BigInt count = alignment_count(m, n).count;
  if (count > kEnumerationGuard)
    throw std::invalid_argument("alignment set too large to enumerate (" +
                                count.str() + " > 1000000 paths)");
  std::vector<AlignmentMatrix> out;
  out.reserve(static_cast<std::size_t>(count));
  AlignmentMatrix cells = AlignmentMatrix::Zero(m, n);
  cells(0, 0) = 1.0;
  dfs(0, 0, m, n, cells, out);
  return out;
}

GibbsStats oracle_stats(const CostMatrix& C, double gamma) {
  return oracle_stats(C, gamma, enumerate_alignments(C.rows(), C.cols()));
}

GibbsStats oracle_stats(const CostMatrix& C, double gamma,
                        const std::vector<AlignmentMatrix>& alignments) {
  if (!(gamma > 0.0)) throw std::invalid_argument("oracle_stats requires gamma > 0");
  if (!all_finite(C)) throw std::invalid_argument("cost matrix has non-finite entries");
  if (alignments.empty() || alignments.front().rows() != C.rows() ||
      alignments.front().cols() != C.cols())
    throw std::invalid_argument("alignment set does not match the cost matrix shape");

  const std::size_t k = alignments.size();
  std::vector<double> costs(k);
  for (std::size_t a = 0; a < k; ++a)
    costs[a] = alignments[a].cwiseProduct(C).sum();

  double best = costs[0], total = 0.0, mean = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    best = std::min(best, costs[a]);
    mean += costs[a];
  }
  mean /= static_cast<double>(k);

  // Max-shifted log-sum-exp of -costs/gamma.
  double hi = -(best) / gamma;
  for (std::size_t a = 0; a < k; ++a) total += std::exp(-costs[a] / gamma - hi);
  const double lse = hi + std::log(total);

  GibbsStats stats;
  stats.sdtw_value = -gamma * lse;
  stats.dtw_value = best;
  stats.mean_cost_value = mean;
  stats.path_count = static_cast<std::uint64_t>(k);
  stats.expected_alignment = ExpectedAlignment::Zero(C.rows(), C.cols());
  stats.entropy = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    const double logp = -costs[a] / gamma - lse;
    const double p = std::exp(logp);
    stats.expected_alignment += p * alignments[a];
    stats.entropy -= p * logp;
  }
  return stats;
}

} // namespace tsdiv
