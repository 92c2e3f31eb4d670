#pragma once

#include <string>

#include "tsdiv/costs.hpp"
#include "tsdiv/matrix.hpp"

namespace tsdiv {

/// One of the eight discrepancy measures between time series. gamma is
/// part of the kind so a single value fully configures a metric; it is
/// ignored by the gamma-free kinds (euclidean, dtw, mean_cost,
/// mean_cost_div).
struct DivergenceKind {
  enum class Tag {
    euclidean,
    dtw,
    sdtw,
    sdtw_div,
    sharp,
    sharp_div,
    mean_cost,
    mean_cost_div,
  };

  Tag tag = Tag::sdtw_div;
  double gamma = 1.0;

  DivergenceKind() = default;
  DivergenceKind(Tag t, double g = 1.0) : tag(t), gamma(g) {}

  DivergenceKind with_gamma(double g) const { return {tag, g}; }
};

bool is_debiased(DivergenceKind::Tag tag);
bool is_gamma_dependent(DivergenceKind::Tag tag);
bool is_differentiable(DivergenceKind::Tag tag); // everything but dtw

/// sdtw_div -> sdtw, sharp_div -> sharp, mean_cost_div -> mean_cost;
/// biased kinds map to themselves.
DivergenceKind biased_counterpart(const DivergenceKind& kind);

std::string to_string(DivergenceKind::Tag tag);
DivergenceKind::Tag divergence_tag_from_string(const std::string& name);

/// Raw (biased) discrepancy on C = build_cost(cost, X, Y).
/// Accepts euclidean, dtw, sdtw, sharp and mean_cost kinds.
double discrepancy(const DivergenceKind& kind, const TimeSeries& X,
                   const TimeSeries& Y, CostKind cost);

/// Debiased divergence base(X,Y) - base(X,X)/2 - base(Y,Y)/2.
/// Accepts sdtw_div, sharp_div and mean_cost_div kinds.
double divergence(const DivergenceKind& kind, const TimeSeries& X,
                  const TimeSeries& Y, CostKind cost);

/// Either of the above, dispatched on the tag.
double evaluate(const DivergenceKind& kind, const TimeSeries& X,
                const TimeSeries& Y, CostKind cost);

/// Correction term base(X, X) of a debiased kind's biased counterpart.
/// Classifiers cache these per series.
double self_term(const DivergenceKind& kind, const TimeSeries& X, CostKind cost);

/// Combines a biased value with cached self terms exactly as divergence()
/// does, so cached and uncached evaluations are bit-identical.
inline double debias(double base_xy, double self_x, double self_y) {
  return base_xy - 0.5 * self_x - 0.5 * self_y;
}

struct ValueAndGrad {
  double value = 0.0;
  Matrix grad;
};

/// Value and gradient with respect to X of any differentiable kind.
ValueAndGrad divergence_grad_x(const DivergenceKind& kind, const TimeSeries& X,
                               const TimeSeries& Y, CostKind cost);

/// Value and X-gradient of a biased kind on C(X, Y). Building block for
/// divergence_grad_x and for barycenter objectives that keep the constant
/// Y-self terms out of the inner loop.
ValueAndGrad biased_grad_x(const DivergenceKind& kind, const TimeSeries& X,
                           const TimeSeries& Y, CostKind cost);

/// Value and X-gradient of the self term base(X, X) of a biased kind.
ValueAndGrad self_term_grad_x(const DivergenceKind& kind, const TimeSeries& X,
                              CostKind cost);

} // namespace tsdiv
