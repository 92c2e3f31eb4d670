#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "tsdiv/alignment_dp.hpp"
#include "tsdiv/divergences.hpp"

using namespace tsdiv;
using namespace tsdiv::testing;

namespace {
using Tag = DivergenceKind::Tag;

TimeSeries col(std::initializer_list<double> values) {
  TimeSeries out(static_cast<Index>(values.size()), 1);
  Index i = 0;
  for (double v : values) out(i++, 0) = v;
  return out;
}

const Tag kAllTags[] = {Tag::euclidean, Tag::dtw,   Tag::sdtw,      Tag::sdtw_div,
                        Tag::sharp,     Tag::sharp_div, Tag::mean_cost, Tag::mean_cost_div};
const Tag kDifferentiable[] = {Tag::euclidean, Tag::sdtw,      Tag::sdtw_div,
                               Tag::sharp,     Tag::sharp_div, Tag::mean_cost,
                               Tag::mean_cost_div};
} // namespace

TEST_CASE("discrepancy worked examples") {
  const TimeSeries X = col({0.0, 1.0});
  const TimeSeries Y = col({0.0, 2.0});
  const CostKind cost = CostKind::squared_euclidean;

  CHECK(discrepancy({Tag::sdtw, 1.0}, X, Y, cost) ==
        doctest::Approx(-0.054956919641990676).epsilon(1e-12));
  CHECK(discrepancy({Tag::sharp, 1.0}, X, Y, cost) ==
        doctest::Approx(0.8294948722390085).epsilon(1e-12));
  CHECK(discrepancy({Tag::dtw}, X, X, cost) == doctest::Approx(0.0));
  CHECK(discrepancy({Tag::euclidean}, X, Y, cost) == doctest::Approx(0.5));
  CHECK(discrepancy({Tag::mean_cost}, X, Y, cost) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-12));

  CHECK_THROWS_AS(discrepancy({Tag::sdtw_div, 1.0}, X, Y, cost), std::invalid_argument);
  CHECK_THROWS_AS(discrepancy({Tag::euclidean}, X, col({0.0, 1.0, 2.0}), cost),
                  std::invalid_argument);
  CHECK_THROWS_AS(discrepancy({Tag::sdtw, 0.0}, X, Y, cost), std::invalid_argument);
}

TEST_CASE("divergence worked examples") {
  const TimeSeries X = col({0.0, 1.0});
  const TimeSeries Y = col({0.0, 2.0});
  const CostKind cost = CostKind::squared_euclidean;

  CHECK(divergence({Tag::sdtw_div, 1.0}, X, Y, cost) ==
        doctest::Approx(0.4620038481777733).epsilon(1e-12));
  CHECK(divergence({Tag::sharp_div, 1.0}, X, Y, cost) ==
        doctest::Approx(0.47944660487000856).epsilon(1e-12));
  CHECK(divergence({Tag::mean_cost_div}, X, Y, cost) ==
        doctest::Approx(0.5).epsilon(1e-14));

  CHECK_THROWS_AS(divergence({Tag::sdtw, 1.0}, X, Y, cost), std::invalid_argument);
}

TEST_CASE("stationary point at X == Y for debiased kinds, not for biased soft-DTW") {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 5; ++trial) {
    TimeSeries X = random_normal(rng, 4, 2);
    const ValueAndGrad d = divergence_grad_x({Tag::sdtw_div, 1.0}, X, X,
                                             CostKind::squared_euclidean);
    CHECK(d.grad.cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(std::abs(d.value) <= 1e-12);

    const ValueAndGrad s = divergence_grad_x({Tag::sharp_div, 1.0}, X, X,
                                             CostKind::squared_euclidean);
    CHECK(s.grad.cwiseAbs().maxCoeff() <= 1e-8);

    const ValueAndGrad biased = divergence_grad_x({Tag::sdtw, 1.0}, X, X,
                                                  CostKind::squared_euclidean);
    CHECK(biased.grad.cwiseAbs().maxCoeff() > 1e-3);
  }
}

TEST_CASE("gradients match finite differences for every differentiable kind") {
  std::mt19937_64 rng(223);
  const CostKind costs[] = {CostKind::squared_euclidean, CostKind::log_augmented};
  for (Tag tag : kDifferentiable) {
    for (CostKind cost : costs) {
      const Index len_y = tag == Tag::euclidean ? 3 : 4;
      const TimeSeries X = random_normal(rng, 3, 1);
      const TimeSeries Y = random_normal(rng, len_y, 1);
      const DivergenceKind kind{tag, 1.0};
      const ValueAndGrad got = divergence_grad_x(kind, X, Y, cost);
      const Matrix fd = fd_gradient(
          [&](const Matrix& Xp) { return evaluate(kind, Xp, Y, cost); }, X, 1e-5);
      CAPTURE(to_string(tag));
      CHECK(max_abs_diff(got.grad, fd) <= 1e-5);
      CHECK(got.value == doctest::Approx(evaluate(kind, X, Y, cost)).epsilon(1e-12));
    }
  }
  // sharp kinds at a non-unit gamma exercise the Hessian scaling
  for (Tag tag : {Tag::sharp, Tag::sharp_div, Tag::sdtw_div}) {
    const TimeSeries X = random_normal(rng, 3, 2);
    const TimeSeries Y = random_normal(rng, 5, 2);
    const DivergenceKind kind{tag, 2.5};
    const ValueAndGrad got = divergence_grad_x(kind, X, Y, CostKind::squared_euclidean);
    const Matrix fd = fd_gradient(
        [&](const Matrix& Xp) {
          return evaluate(kind, Xp, Y, CostKind::squared_euclidean);
        },
        X, 1e-5);
    CHECK(max_abs_diff(got.grad, fd) <= 1e-5);
  }

  CHECK_THROWS_AS(divergence_grad_x({Tag::dtw}, col({0.0}), col({1.0}),
                                    CostKind::squared_euclidean),
                  std::invalid_argument);
}

TEST_CASE("all kinds are symmetric in their arguments") {
  std::mt19937_64 rng(227);
  const CostKind costs[] = {CostKind::squared_euclidean, CostKind::log_augmented,
                            CostKind::absolute};
  for (CostKind cost : costs) {
    for (Tag tag : kAllTags) {
      for (int trial = 0; trial < 5; ++trial) {
        const Index m = tag == Tag::euclidean ? 4 : 3 + static_cast<Index>(rng() % 3);
        const TimeSeries X = random_normal(rng, m, 1);
        const TimeSeries Y = random_normal(rng, tag == Tag::euclidean ? m : 4, 1);
        const DivergenceKind kind{tag, 1.0};
        const double xy = evaluate(kind, X, Y, cost);
        const double yx = evaluate(kind, Y, X, cost);
        CAPTURE(to_string(tag));
        CHECK(std::abs(xy - yx) <= 1e-10 * (1.0 + std::abs(xy)));
      }
    }
  }
}

TEST_CASE("debiased kinds vanish at X == Y") {
  std::mt19937_64 rng(229);
  for (Tag tag : {Tag::sdtw_div, Tag::sharp_div, Tag::mean_cost_div}) {
    for (int trial = 0; trial < 5; ++trial) {
      const TimeSeries X = random_normal(rng, 5, 2);
      CHECK(std::abs(evaluate({tag, 1.0}, X, X, CostKind::squared_euclidean)) <= 1e-12);
      CHECK(std::abs(evaluate({tag, 1.0}, X, X, CostKind::log_augmented)) <= 1e-12);
    }
  }
}

TEST_CASE("soft-DTW divergence is a valid divergence under the proven costs") {
  std::mt19937_64 rng(233);
  // log-augmented, d up to 3
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 1 + static_cast<Index>(rng() % 3);
    const TimeSeries X = random_normal(rng, 2 + static_cast<Index>(rng() % 4), d);
    const TimeSeries Y = random_normal(rng, 2 + static_cast<Index>(rng() % 4), d);
    const double v = divergence({Tag::sdtw_div, 1.0}, X, Y, CostKind::log_augmented);
    CHECK(v >= -1e-10);
    CHECK(v > 1e-6); // X != Y with probability one
  }
  // absolute value, d = 1
  for (int trial = 0; trial < 100; ++trial) {
    const TimeSeries X = random_normal(rng, 2 + static_cast<Index>(rng() % 4), 1);
    const TimeSeries Y = random_normal(rng, 2 + static_cast<Index>(rng() % 4), 1);
    const double v = divergence({Tag::sdtw_div, 1.0}, X, Y, CostKind::absolute);
    CHECK(v >= -1e-10);
    CHECK(v > 1e-6);
  }
}

TEST_CASE("conjecture: non-negativity under the squared Euclidean cost") {
  std::mt19937_64 rng(239);
  for (int trial = 0; trial < 100; ++trial) {
    const TimeSeries X = random_normal(rng, 2 + static_cast<Index>(rng() % 4), 2);
    const TimeSeries Y = random_normal(rng, 2 + static_cast<Index>(rng() % 4), 2);
    for (Tag tag : {Tag::sdtw_div, Tag::sharp_div}) {
      const double v = divergence({tag, 1.0}, X, Y, CostKind::squared_euclidean);
      CAPTURE(to_string(tag));
      CHECK(v >= -1e-10);
    }
  }
}

TEST_CASE("limits in gamma: DTW at zero, mean cost at infinity (equal lengths)") {
  std::mt19937_64 rng(241);
  for (int trial = 0; trial < 5; ++trial) {
    const TimeSeries X = random_normal(rng, 4, 1);
    const TimeSeries Y = random_normal(rng, 4, 1);
    const CostKind cost = CostKind::squared_euclidean;

    const double dtw_div = discrepancy({Tag::dtw}, X, Y, cost);
    CHECK(std::abs(divergence({Tag::sdtw_div, 1e-6}, X, Y, cost) - dtw_div) <= 1e-3);
    CHECK(std::abs(divergence({Tag::sharp_div, 1e-6}, X, Y, cost) - dtw_div) <= 1e-3);

    const double mean_div = divergence({Tag::mean_cost_div}, X, Y, cost);
    CHECK(std::abs(divergence({Tag::sdtw_div, 1e6}, X, Y, cost) - mean_div) <= 1e-3);
    CHECK(std::abs(divergence({Tag::sharp_div, 1e6}, X, Y, cost) - mean_div) <= 1e-3);
  }
}

TEST_CASE("limits in gamma: unequal lengths diverge with the Delannoy slope") {
  std::mt19937_64 rng(251);
  const Index m = 4, n = 6;
  const TimeSeries X = random_normal(rng, m, 1);
  const TimeSeries Y = random_normal(rng, n, 1);
  const CostKind cost = CostKind::squared_euclidean;

  const double log_ratio =
      std::log(alignment_count(m, m).count.convert_to<double>()) +
      std::log(alignment_count(n, n).count.convert_to<double>()) -
      2.0 * std::log(alignment_count(m, n).count.convert_to<double>());
  // Cauchy-Schwarz on the Delannoy sum: |A(m,n)|^2 < |A(m,m)| |A(n,n)|
  CHECK(-log_ratio < 0.0);
  const double slope = 0.5 * log_ratio;

  const double d3 = divergence({Tag::sdtw_div, 1e3}, X, Y, cost);
  const double d4 = divergence({Tag::sdtw_div, 1e4}, X, Y, cost);
  const double observed = (d4 - d3) / (1e4 - 1e3);
  CHECK(std::abs(observed - slope) <= 1e-2 * std::abs(slope));

  // the sharp divergence still converges to the mean-cost divergence
  const double mean_div = divergence({Tag::mean_cost_div}, X, Y, cost);
  CHECK(std::abs(divergence({Tag::sharp_div, 1e6}, X, Y, cost) - mean_div) <= 1e-3);
}

TEST_CASE("expected self-alignment is symmetric for built-in costs") {
  std::mt19937_64 rng(257);
  for (CostKind cost : {CostKind::squared_euclidean, CostKind::log_augmented}) {
    const TimeSeries X = random_normal(rng, 5, 2);
    const CostMatrix C = build_cost(cost, X, X);
    const ExpectedAlignment E = expected_alignment(soft_dtw_forward(C, 1.0).transitions);
    CHECK(max_abs_diff(E, E.transpose()) <= 1e-12);
  }
}

TEST_CASE("self-term caching combines bit-identically") {
  std::mt19937_64 rng(263);
  const TimeSeries X = random_normal(rng, 5, 1);
  const TimeSeries Y = random_normal(rng, 6, 1);
  for (Tag tag : {Tag::sdtw_div, Tag::sharp_div, Tag::mean_cost_div}) {
    const DivergenceKind kind{tag, 1.0};
    const DivergenceKind base = biased_counterpart(kind);
    const double direct = divergence(kind, X, Y, CostKind::squared_euclidean);
    const double cached = debias(
        discrepancy(base, X, Y, CostKind::squared_euclidean),
        self_term(kind, X, CostKind::squared_euclidean),
        self_term(kind, Y, CostKind::squared_euclidean));
    CHECK(direct == cached); // bitwise
  }
}

TEST_CASE("kind names round-trip") {
  for (Tag tag : kAllTags) CHECK(divergence_tag_from_string(to_string(tag)) == tag);
  CHECK_THROWS_AS(divergence_tag_from_string("bogus"), std::invalid_argument);
}
