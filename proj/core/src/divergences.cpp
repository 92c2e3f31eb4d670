#include "tsdiv/divergences.hpp"

#include <stdexcept>

#include "tsdiv/alignment_dp.hpp"

namespace tsdiv {

namespace {

using Tag = DivergenceKind::Tag;

void check_gamma(const DivergenceKind& kind) {
  if (is_gamma_dependent(kind.tag) && !(kind.gamma > 0.0))
    throw std::invalid_argument("kind '" + to_string(kind.tag) +
                                "' requires gamma > 0");
}

double euclidean_value(const TimeSeries& X, const TimeSeries& Y) {
  if (X.rows() != Y.rows())
    throw std::invalid_argument("euclidean kind requires equal lengths");
  if (X.cols() != Y.cols())
    throw std::invalid_argument("time series dimensions differ");
  return 0.5 * (X - Y).squaredNorm();
}

// grad_C of sharp_gamma(C) = E + Hessian(C) applied to C.
Matrix sharp_cost_gradient(const TransitionTensor& transitions,
                           const ExpectedAlignment& E, const CostMatrix& C,
                           double* value_out) {
  DirectionalDerivative dd = directional_derivative(transitions, C);
  if (value_out != nullptr) *value_out = dd.value;
  return E + hessian_product(transitions, dd.vdot, E, C);
}

} // namespace

bool is_debiased(Tag tag) {
  return tag == Tag::sdtw_div || tag == Tag::sharp_div || tag == Tag::mean_cost_div;
}

bool is_gamma_dependent(Tag tag) {
  return tag == Tag::sdtw || tag == Tag::sdtw_div || tag == Tag::sharp ||
         tag == Tag::sharp_div;
}

bool is_differentiable(Tag tag) { return tag != Tag::dtw; }

DivergenceKind biased_counterpart(const DivergenceKind& kind) {
  switch (kind.tag) {
    case Tag::sdtw_div: return {Tag::sdtw, kind.gamma};
    case Tag::sharp_div: return {Tag::sharp, kind.gamma};
    case Tag::mean_cost_div: return {Tag::mean_cost, kind.gamma};
    default: return kind;
  }
}

std::string to_string(Tag tag) {
  switch (tag) {
    case Tag::euclidean: return "euclidean";
    case Tag::dtw: return "dtw";
    case Tag::sdtw: return "sdtw";
    case Tag::sdtw_div: return "sdtw_div";
    case Tag::sharp: return "sharp";
    case Tag::sharp_div: return "sharp_div";
    case Tag::mean_cost: return "mean_cost";
    case Tag::mean_cost_div: return "mean_cost_div";
  }
  return "?";
}

Tag divergence_tag_from_string(const std::string& name) {
  if (name == "euclidean" || name == "euc") return Tag::euclidean;
  if (name == "dtw") return Tag::dtw;
  if (name == "sdtw") return Tag::sdtw;
  if (name == "sdtw_div") return Tag::sdtw_div;
  if (name == "sharp") return Tag::sharp;
  if (name == "sharp_div") return Tag::sharp_div;
  if (name == "mean_cost") return Tag::mean_cost;
  if (name == "mean_cost_div") return Tag::mean_cost_div;
  throw std::invalid_argument("unknown divergence kind: " + name);
}

double discrepancy(const DivergenceKind& kind, const TimeSeries& X,
                   const TimeSeries& Y, CostKind cost) {
  check_gamma(kind);
  switch (kind.tag) {
    case Tag::euclidean:
      return euclidean_value(X, Y);
    case Tag::dtw:
      return hard_dtw(build_cost(cost, X, Y)).value;
    case Tag::sdtw:
      return soft_dtw_forward(build_cost(cost, X, Y), kind.gamma).value;
    case Tag::sharp: {
      const CostMatrix C = build_cost(cost, X, Y);
      SoftDtwResult fwd = soft_dtw_forward(C, kind.gamma);
      return directional_derivative(fwd.transitions, C).value;
    }
    case Tag::mean_cost:
      return mean_cost(build_cost(cost, X, Y)).value;
    default:
      throw std::invalid_argument("discrepancy expects a biased kind, got '" +
                                  to_string(kind.tag) + "'");
  }
}

double divergence(const DivergenceKind& kind, const TimeSeries& X,
                  const TimeSeries& Y, CostKind cost) {
  if (!is_debiased(kind.tag))
    throw std::invalid_argument("divergence expects a debiased kind, got '" +
                                to_string(kind.tag) + "'");
  const DivergenceKind base = biased_counterpart(kind);
  return debias(discrepancy(base, X, Y, cost), discrepancy(base, X, X, cost),
                discrepancy(base, Y, Y, cost));
}

double evaluate(const DivergenceKind& kind, const TimeSeries& X,
                const TimeSeries& Y, CostKind cost) {
  return is_debiased(kind.tag) ? divergence(kind, X, Y, cost)
                               : discrepancy(kind, X, Y, cost);
}

double self_term(const DivergenceKind& kind, const TimeSeries& X, CostKind cost) {
  return discrepancy(biased_counterpart(kind), X, X, cost);
}

ValueAndGrad biased_grad_x(const DivergenceKind& kind, const TimeSeries& X,
                           const TimeSeries& Y, CostKind cost) {
  check_gamma(kind);
  switch (kind.tag) {
    case Tag::euclidean:
      return {euclidean_value(X, Y), X - Y};
    case Tag::sdtw: {
      const CostMatrix C = build_cost(cost, X, Y);
      SoftDtwResult fwd = soft_dtw_forward(C, kind.gamma);
      const ExpectedAlignment E = expected_alignment(fwd.transitions);
      return {fwd.value, cost_vjp(cost, X, Y, E, false)};
    }
    case Tag::sharp: {
      const CostMatrix C = build_cost(cost, X, Y);
      SoftDtwResult fwd = soft_dtw_forward(C, kind.gamma);
      const ExpectedAlignment E = expected_alignment(fwd.transitions);
      double value = 0.0;
      const Matrix G = sharp_cost_gradient(fwd.transitions, E, C, &value);
      return {value, cost_vjp(cost, X, Y, G, false)};
    }
    case Tag::mean_cost: {
      MeanCostResult mc = mean_cost(build_cost(cost, X, Y));
      return {mc.value, cost_vjp(cost, X, Y, mc.mean_alignment, false)};
    }
    case Tag::dtw:
      throw std::invalid_argument(
          "dtw is not differentiable everywhere; use discrepancy for values");
    default:
      throw std::invalid_argument("biased_grad_x expects a biased kind, got '" +
                                  to_string(kind.tag) + "'");
  }
}

ValueAndGrad self_term_grad_x(const DivergenceKind& kind, const TimeSeries& X,
                              CostKind cost) {
  check_gamma(kind);
  switch (kind.tag) {
    case Tag::sdtw: {
      const CostMatrix C = build_cost(cost, X, X);
      SoftDtwResult fwd = soft_dtw_forward(C, kind.gamma);
      const ExpectedAlignment E = expected_alignment(fwd.transitions);
      return {fwd.value, cost_vjp(cost, X, X, E, true)};
    }
    case Tag::sharp: {
      const CostMatrix C = build_cost(cost, X, X);
      SoftDtwResult fwd = soft_dtw_forward(C, kind.gamma);
      const ExpectedAlignment E = expected_alignment(fwd.transitions);
      double value = 0.0;
      const Matrix G = sharp_cost_gradient(fwd.transitions, E, C, &value);
      return {value, cost_vjp(cost, X, X, G, true)};
    }
    case Tag::mean_cost: {
      MeanCostResult mc = mean_cost(build_cost(cost, X, X));
      return {mc.value, cost_vjp(cost, X, X, mc.mean_alignment, true)};
    }
    default:
      throw std::invalid_argument("self_term_grad_x expects sdtw, sharp or mean_cost");
  }
}

ValueAndGrad divergence_grad_x(const DivergenceKind& kind, const TimeSeries& X,
                               const TimeSeries& Y, CostKind cost) {
  if (!is_differentiable(kind.tag))
    throw std::invalid_argument(
        "dtw is not differentiable everywhere; use discrepancy for values");
  if (!is_debiased(kind.tag)) return biased_grad_x(kind, X, Y, cost);

  const DivergenceKind base = biased_counterpart(kind);
  ValueAndGrad cross = biased_grad_x(base, X, Y, cost);
  ValueAndGrad self_x = self_term_grad_x(base, X, cost);
  const double self_y = discrepancy(base, Y, Y, cost); // constant in X
  return {debias(cross.value, self_x.value, self_y),
          cross.grad - 0.5 * self_x.grad};
}

} // namespace tsdiv
