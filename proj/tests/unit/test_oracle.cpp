#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "test_helpers.hpp"
#include "tsdiv/oracle.hpp"

using namespace tsdiv;
using namespace tsdiv::testing;

namespace {
Matrix example_cost() {
  Matrix C(2, 2);
  C << 0.0, 2.0, 0.5, 0.5;
  return C;
}

// A monotonic path visited in order is its cell list sorted
// lexicographically, and consecutive cells differ by a right, down or
// diagonal move.
bool is_valid_path(const AlignmentMatrix& A) {
  const Index m = A.rows(), n = A.cols();
  std::vector<std::pair<Index, Index>> cells;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) {
      if (A(i, j) != 0.0 && A(i, j) != 1.0) return false;
      if (A(i, j) == 1.0) cells.emplace_back(i, j);
    }
  const auto ones = static_cast<Index>(cells.size());
  if (ones < std::max(m, n) || ones > m + n - 1) return false;
  if (cells.front() != std::pair<Index, Index>{0, 0}) return false;
  if (cells.back() != std::pair<Index, Index>{m - 1, n - 1}) return false;
  for (std::size_t c = 1; c < cells.size(); ++c) {
    const Index di = cells[c].first - cells[c - 1].first;
    const Index dj = cells[c].second - cells[c - 1].second;
    const bool move = (di == 0 && dj == 1) || (di == 1 && dj == 0) ||
                      (di == 1 && dj == 1);
    if (!move) return false;
  }
  return true;
}
} // namespace

TEST_CASE("enumerate_alignments counts and shapes") {
  CHECK(enumerate_alignments(1, 1).size() == 1);
  CHECK(enumerate_alignments(2, 2).size() == 3);
  CHECK(enumerate_alignments(3, 3).size() == 13);
  CHECK(enumerate_alignments(2, 3).size() == 5);
  CHECK(enumerate_alignments(1, 1).front()(0, 0) == 1.0);
}

TEST_CASE("enumerate_alignments guard and validity") {
  CHECK_THROWS_AS(enumerate_alignments(20, 20), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_alignments(0, 3), std::invalid_argument);
  for (auto [m, n] : {std::pair<Index, Index>{3, 5}, {4, 4}, {1, 6}}) {
    const auto paths = enumerate_alignments(m, n);
    for (const auto& A : paths) CHECK(is_valid_path(A));
    // duplicate-free
    for (std::size_t a = 0; a < paths.size(); ++a)
      for (std::size_t b = a + 1; b < paths.size(); ++b)
        CHECK((paths[a] - paths[b]).cwiseAbs().maxCoeff() > 0.0);
  }
}

TEST_CASE("oracle_stats on the worked 2x2 example") {
  const GibbsStats st = oracle_stats(example_cost(), 1.0);
  CHECK(st.path_count == 3);
  CHECK(st.sdtw_value == doctest::Approx(-0.054956919641990676).epsilon(1e-12));
  CHECK(st.dtw_value == doctest::Approx(0.5));
  CHECK(st.mean_cost_value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(st.entropy == doctest::Approx(0.8844517918809993).epsilon(1e-10));
  CHECK(st.expected_alignment(0, 0) == doctest::Approx(1.0));
  CHECK(st.expected_alignment(0, 1) == doctest::Approx(0.07769558).epsilon(1e-6));
  CHECK(st.expected_alignment(1, 0) == doctest::Approx(0.34820743).epsilon(1e-6));
}

TEST_CASE("oracle decomposition identity sdtw = <E,C> - gamma H") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix C = random_uniform(rng, 3, 4, 0.0, 5.0);
    for (double gamma : {0.3, 1.0, 4.0}) {
      const GibbsStats st = oracle_stats(C, gamma);
      const double lhs = st.sdtw_value;
      const double rhs = st.expected_alignment.cwiseProduct(C).sum() - gamma * st.entropy;
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
      CHECK(st.entropy >= 0.0);
      CHECK(st.entropy <= std::log(static_cast<double>(st.path_count)) + 1e-12);
    }
  }
}

TEST_CASE("oracle Gibbs distribution tends to uniform for huge gamma") {
  const GibbsStats st = oracle_stats(example_cost(), 1e8);
  CHECK(st.expected_alignment(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(st.expected_alignment(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}
