#include "tsdiv/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tsdiv/parallel.hpp"

namespace tsdiv {

namespace {

using Tag = DivergenceKind::Tag;

Index median_length(const std::vector<TimeSeries>& series) {
  std::vector<Index> lengths;
  lengths.reserve(series.size());
  for (const auto& s : series) lengths.push_back(s.rows());
  std::sort(lengths.begin(), lengths.end());
  return lengths[lengths.size() / 2];
}

std::vector<double> resolve_weights(const AveragingProblem& p) {
  if (!p.weights.empty()) {
    if (p.weights.size() != p.series.size())
      throw std::invalid_argument("weights and series counts differ");
    for (double w : p.weights)
      if (!(w > 0.0)) throw std::invalid_argument("weights must be positive");
    return p.weights;
  }
  const Index n0 = p.series.front().rows();
  const bool equal = std::all_of(p.series.begin(), p.series.end(),
                                 [&](const TimeSeries& s) { return s.rows() == n0; });
  std::vector<double> w(p.series.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = equal ? 1.0 : 1.0 / static_cast<double>(p.series[i].rows());
  return w;
}

TimeSeries euclidean_mean(const std::vector<TimeSeries>& series, Index length) {
  const Index d = series.front().cols();
  TimeSeries mean = TimeSeries::Zero(length, d);
  for (const auto& s : series)
    mean += (s.rows() == length) ? s : resample(s, length);
  mean /= static_cast<double>(series.size());
  return mean;
}

// Objective sum_i w_i base(X, Y_i) [- sum(w)/2 * base(X, X) - const for
// debiased kinds]. Per-series terms are evaluated concurrently and reduced
// in index order.
Objective make_objective(const AveragingProblem& p, const DivergenceKind& kind,
                         const std::vector<double>& weights) {
  const bool debiased = is_debiased(kind.tag);
  const DivergenceKind base = biased_counterpart(kind);
  double const_term = 0.0;
  if (debiased) {
    for (std::size_t i = 0; i < p.series.size(); ++i)
      const_term -= 0.5 * weights[i] * self_term(kind, p.series[i], p.cost);
  }
  const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);

  // Copies keep the objective self-contained and re-entrant.
  auto series = p.series;
  auto cost = p.cost;
  return [=](const Matrix& X, Matrix& grad) -> double {
    std::vector<ValueAndGrad> parts(series.size());
    parallel_for(series.size(), [&](std::size_t i) {
      parts[i] = biased_grad_x(base, X, series[i], cost);
    });
    double value = const_term;
    grad = Matrix::Zero(X.rows(), X.cols());
    for (std::size_t i = 0; i < series.size(); ++i) {
      value += weights[i] * parts[i].value;
      grad += weights[i] * parts[i].grad;
    }
    if (debiased) {
      ValueAndGrad self = self_term_grad_x(base, X, cost);
      value -= 0.5 * weight_sum * self.value;
      grad -= 0.5 * weight_sum * self.grad;
    }
    return value;
  };
}

} // namespace

double default_gamma(Tag tag) { return is_debiased(tag) ? 10.0 : 1.0; }

TimeSeries resample(const TimeSeries& series, Index length) {
  if (length < 1) throw std::invalid_argument("resample length must be positive");
  const Index n = series.rows();
  if (n == length) return series;
  TimeSeries out(length, series.cols());
  if (n == 1) {
    out.rowwise() = series.row(0);
    return out;
  }
  for (Index t = 0; t < length; ++t) {
    const double pos = (length == 1)
                           ? 0.0
                           : static_cast<double>(t) * static_cast<double>(n - 1) /
                                 static_cast<double>(length - 1);
    const Index i0 = std::min<Index>(static_cast<Index>(pos), n - 2);
    const double frac = pos - static_cast<double>(i0);
    out.row(t) = (1.0 - frac) * series.row(i0) + frac * series.row(i0 + 1);
  }
  return out;
}

BarycenterResult frechet_mean(const AveragingProblem& problem, int max_iters) {
  if (problem.series.empty())
    throw std::invalid_argument("frechet_mean needs at least one series");
  if (!is_differentiable(problem.kind.tag))
    throw std::invalid_argument("frechet_mean requires a differentiable kind");
  const Index d = problem.series.front().cols();
  for (const auto& s : problem.series)
    if (s.cols() != d) throw std::invalid_argument("series dimensions differ");
  if (problem.kind.tag == Tag::euclidean) {
    const Index n0 = problem.series.front().rows();
    for (const auto& s : problem.series)
      if (s.rows() != n0)
        throw std::invalid_argument("euclidean kind requires equal lengths");
  }

  const Index length = problem.barycenter_length > 0 ? problem.barycenter_length
                                                     : median_length(problem.series);
  const std::vector<double> weights = resolve_weights(problem);

  using ITag = InitScheme::Tag;
  ITag init_tag = problem.init.tag;
  if (init_tag == ITag::automatic)
    init_tag = is_debiased(problem.kind.tag) ? ITag::warm_start_biased
                                             : ITag::euclidean_mean;

  TimeSeries x0;
  switch (init_tag) {
    case ITag::explicit_point:
      if (problem.init.x0.rows() != length || problem.init.x0.cols() != d)
        throw std::invalid_argument("explicit init has the wrong shape");
      x0 = problem.init.x0;
      break;
    case ITag::euclidean_mean:
      x0 = euclidean_mean(problem.series, length);
      break;
    case ITag::warm_start_biased: {
      // Solve the biased counterpart from the Euclidean mean first.
      const Objective warm =
          make_objective(problem, biased_counterpart(problem.kind), weights);
      x0 = minimize(warm, euclidean_mean(problem.series, length), max_iters).x;
      break;
    }
    case ITag::automatic:
      break; // unreachable
  }

  const Objective objective = make_objective(problem, problem.kind, weights);
  MinimizeResult res = minimize(objective, x0, max_iters);
  return {std::move(res.x), std::move(res.trace), res.iterations,
          res.line_search_failed};
}

BarycenterResult interpolate(const TimeSeries& Y1, const TimeSeries& Y2, double pi,
                             const DivergenceKind& kind, CostKind cost,
                             Index length, int max_iters) {
  if (!(pi >= 0.0 && pi <= 1.0))
    throw std::invalid_argument("pi must lie in [0, 1]");
  AveragingProblem p;
  p.series = {Y1, Y2};
  // A zero weight would drop a term entirely; keep both with a floor so the
  // pi in {0, 1} endpoints still reduce to single-series problems in effect.
  constexpr double kFloor = 1e-12;
  p.weights = {std::max(pi, kFloor), std::max(1.0 - pi, kFloor)};
  p.kind = kind;
  p.cost = cost;
  p.barycenter_length = length;
  return frechet_mean(p, max_iters);
}

} // namespace tsdiv
