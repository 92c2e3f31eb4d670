#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "tsdiv/barycenter.hpp"

using namespace tsdiv;
using namespace tsdiv::testing;

namespace {
using Tag = DivergenceKind::Tag;

TimeSeries smooth_series(Index length, double phase, double noise_seed = 0.0) {
  TimeSeries s(length, 1);
  for (Index t = 0; t < length; ++t) {
    const double x = static_cast<double>(t) / static_cast<double>(length - 1);
    s(t, 0) = std::sin(6.28 * (x + phase)) + 0.05 * std::sin(40.0 * x + noise_seed);
  }
  return s;
}
} // namespace

TEST_CASE("minimize solves a quadratic") {
  std::mt19937_64 rng(301);
  const Matrix A = random_normal(rng, 6, 2);
  const Objective objective = [&](const Matrix& X, Matrix& grad) {
    grad = X - A;
    return 0.5 * (X - A).squaredNorm();
  };
  const MinimizeResult res = minimize(objective, Matrix::Zero(6, 2), 50);
  CHECK(res.iterations <= 50);
  CHECK(max_abs_diff(res.x, A) <= 1e-6);
  CHECK_FALSE(res.line_search_failed);
  CHECK(res.value <= res.trace.front());

  Matrix bad = Matrix::Zero(6, 2);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(minimize(objective, bad, 10), std::invalid_argument);
}

TEST_CASE("minimize on Rosenbrock reaches the optimum") {
  const Objective rosenbrock = [](const Matrix& X, Matrix& grad) {
    const double x = X(0, 0), y = X(1, 0);
    grad.resize(2, 1);
    grad(0, 0) = -2.0 * (1.0 - x) - 400.0 * x * (y - x * x);
    grad(1, 0) = 200.0 * (y - x * x);
    return (1.0 - x) * (1.0 - x) + 100.0 * (y - x * x) * (y - x * x);
  };
  Matrix x0(2, 1);
  x0 << -1.2, 1.0;
  const MinimizeResult res = minimize(rosenbrock, x0, 200, 1e-10);
  CHECK(std::abs(res.x(0, 0) - 1.0) <= 1e-6);
  CHECK(std::abs(res.x(1, 0) - 1.0) <= 1e-6);
}

TEST_CASE("minimize stays at the divergence minimum and escapes the biased one") {
  const TimeSeries Y = smooth_series(10, 0.15);

  // sdtw_div with the log-augmented cost is minimized exactly at Y
  const Objective div_objective = [&](const Matrix& X, Matrix& grad) {
    const ValueAndGrad vg = divergence_grad_x({Tag::sdtw_div, 1.0}, X, Y,
                                              CostKind::log_augmented);
    grad = vg.grad;
    return vg.value;
  };
  const MinimizeResult stay = minimize(div_objective, Y, 100);
  CHECK(max_abs_diff(stay.x, Y) <= 1e-6);

  // biased soft-DTW moves away from Y and improves on sdtw(Y, Y)
  const Objective biased_objective = [&](const Matrix& X, Matrix& grad) {
    const ValueAndGrad vg = divergence_grad_x({Tag::sdtw, 1.0}, X, Y,
                                              CostKind::squared_euclidean);
    grad = vg.grad;
    return vg.value;
  };
  const MinimizeResult moved = minimize(biased_objective, Y, 100);
  CHECK(max_abs_diff(moved.x, Y) > 1e-3);
  CHECK(moved.value < discrepancy({Tag::sdtw, 1.0}, Y, Y, CostKind::squared_euclidean));
}

TEST_CASE("objective traces are non-increasing") {
  std::mt19937_64 rng(307);
  AveragingProblem p;
  for (int i = 0; i < 6; ++i)
    p.series.push_back(smooth_series(12, 0.05 * i, static_cast<double>(i)));
  p.kind = {Tag::sdtw, 1.0};
  p.cost = CostKind::squared_euclidean;
  const BarycenterResult res = frechet_mean(p, 60);
  REQUIRE(res.objective_trace.size() >= 2);
  for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
    CHECK(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-9);
  // strictly below the Euclidean-mean initialization
  CHECK(res.objective_trace.back() < res.objective_trace.front());
}

TEST_CASE("single-series divergence barycenter recovers the series") {
  const TimeSeries Y = smooth_series(8, 0.4);
  AveragingProblem p;
  p.series = {Y};
  p.kind = {Tag::sdtw_div, 10.0};
  p.cost = CostKind::log_augmented;
  const BarycenterResult res = frechet_mean(p, 200);
  CHECK(max_abs_diff(res.x, Y) <= 1e-4);
}

TEST_CASE("identical inputs give back the input") {
  const TimeSeries Y = smooth_series(9, 0.8);
  for (Tag tag : {Tag::sdtw_div, Tag::sharp_div}) {
    AveragingProblem p;
    p.series = {Y, Y};
    p.kind = {tag, 10.0};
    p.cost = CostKind::log_augmented;
    const BarycenterResult res = frechet_mean(p, 200);
    CAPTURE(to_string(tag));
    CHECK(max_abs_diff(res.x, Y) <= 1e-4);
  }
}

TEST_CASE("warm start refines the biased solution without losing ground") {
  std::mt19937_64 rng(311);
  AveragingProblem p;
  for (int i = 0; i < 4; ++i)
    p.series.push_back(smooth_series(10, 0.03 * i, static_cast<double>(i)));
  p.kind = {Tag::sdtw_div, 10.0};
  p.cost = CostKind::squared_euclidean;
  p.init = InitScheme::warm_start();
  const BarycenterResult res = frechet_mean(p, 80);
  // the trace starts at the warm-start point; descent keeps the final
  // objective at or below it
  CHECK(res.objective_trace.back() <= res.objective_trace.front() + 1e-9);
}

TEST_CASE("unspecified weights default to inverse lengths for ragged inputs") {
  // series of different lengths: objective must use w = 1/n_i, which the
  // per-term values reveal through the optimum of a 1-step problem
  const TimeSeries a = TimeSeries::Constant(2, 1, 1.0);
  const TimeSeries b = TimeSeries::Constant(4, 1, 5.0);
  AveragingProblem p;
  p.series = {a, b};
  p.kind = {Tag::euclidean};
  p.cost = CostKind::squared_euclidean;
  p.barycenter_length = 1;
  CHECK_THROWS_AS(frechet_mean(p, 50), std::invalid_argument); // euclidean needs equal lengths

  p.kind = {Tag::sdtw, 1.0};
  const BarycenterResult res = frechet_mean(p, 100);
  // A 1-step barycenter x aligns to every step, so sdtw(C(x, Y_i)) is
  // n_i/2 (x - v_i)^2 for a constant series. With the 1/n_i default the
  // length factors cancel: objective (x-1)^2/2 + (x-5)^2/2, optimum 3.
  // Uniform weights would give 11/3 instead.
  CHECK(res.x(0, 0) == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("interpolate endpoints and midpoint") {
  const TimeSeries Y1 = smooth_series(8, 0.1);
  const TimeSeries Y2 = smooth_series(8, 0.6);
  const DivergenceKind kind{Tag::sdtw_div, 10.0};

  const BarycenterResult at1 = interpolate(Y1, Y2, 1.0, kind, CostKind::log_augmented);
  CHECK(max_abs_diff(at1.x, Y1) <= 1e-3);
  const BarycenterResult at0 = interpolate(Y1, Y2, 0.0, kind, CostKind::log_augmented);
  CHECK(max_abs_diff(at0.x, Y2) <= 1e-3);
  const BarycenterResult same = interpolate(Y1, Y1, 0.5, kind, CostKind::log_augmented);
  CHECK(max_abs_diff(same.x, Y1) <= 1e-4);

  CHECK_THROWS_AS(interpolate(Y1, Y2, 1.5, kind, CostKind::log_augmented),
                  std::invalid_argument);
}

TEST_CASE("resample endpoints and linearity") {
  TimeSeries s(3, 1);
  s << 0.0, 1.0, 4.0;
  const TimeSeries up = resample(s, 5);
  CHECK(up(0, 0) == doctest::Approx(0.0));
  CHECK(up(4, 0) == doctest::Approx(4.0));
  CHECK(up(1, 0) == doctest::Approx(0.5));
  const TimeSeries down = resample(s, 1);
  CHECK(down(0, 0) == doctest::Approx(0.0));
  CHECK(resample(s, 3) == s);
}

TEST_CASE("default gammas follow the averaging protocol") {
  CHECK(default_gamma(Tag::sdtw) == 1.0);
  CHECK(default_gamma(Tag::sharp) == 1.0);
  CHECK(default_gamma(Tag::mean_cost) == 1.0);
  CHECK(default_gamma(Tag::sdtw_div) == 10.0);
  CHECK(default_gamma(Tag::sharp_div) == 10.0);
  CHECK(default_gamma(Tag::mean_cost_div) == 10.0);
}
