#pragma once

#include <vector>

#include "tsdiv/matrix.hpp"

namespace tsdiv {

/// Exact-by-enumeration statistics of the Gibbs distribution over
/// monotonic alignments. Intentionally exponential; guarded by path count.
struct GibbsStats {
  double sdtw_value = 0.0;
  ExpectedAlignment expected_alignment;
  double entropy = 0.0; // nats, in [0, log(path_count)]
  double mean_cost_value = 0.0;
  double dtw_value = 0.0;
  std::uint64_t path_count = 0;
};

/// All monotonic alignment matrices of an m x n grid, enumerated
/// depth-first over moves (right, diagonal, down) from the top-left cell.
/// Throws std::invalid_argument when the Delannoy count exceeds 10^6.
std::vector<AlignmentMatrix> enumerate_alignments(Index m, Index n);

GibbsStats oracle_stats(const CostMatrix& C, double gamma);

/// Same, reusing a previously enumerated alignment set for C's shape.
GibbsStats oracle_stats(const CostMatrix& C, double gamma,
                        const std::vector<AlignmentMatrix>& alignments);

} // namespace tsdiv
