#include "tsdiv/alignment_dp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tsdiv {

namespace {

void check_cost(const CostMatrix& C) {
  if (C.rows() < 1 || C.cols() < 1)
    throw std::invalid_argument("cost matrix must have at least one row and column");
  if (!all_finite(C))
    throw std::invalid_argument("cost matrix has non-finite entries");
}

void check_transitions(const TransitionTensor& t) {
  if (t.rows < 1 || t.cols < 1 ||
      t.data.size() != static_cast<std::size_t>(t.rows * t.cols * 3))
    throw std::invalid_argument("malformed transition tensor");
  for (Index i = 0; i < t.rows; ++i) {
    for (Index j = 0; j < t.cols; ++j) {
      const double a = t.p(i, j, 0), b = t.p(i, j, 1), c = t.p(i, j, 2);
      if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0 || c < 0.0 || c > 1.0 ||
          std::abs(a + b + c - 1.0) > 1e-8)
        throw std::invalid_argument(
            "transition probabilities at cell (" + std::to_string(i) + ", " +
            std::to_string(j) + ") do not form a distribution");
    }
  }
}

void check_same_shape(const TransitionTensor& t, const Matrix& Z,
                      const char* name) {
  if (Z.rows() != t.rows || Z.cols() != t.cols)
    throw std::invalid_argument(std::string(name) +
                                " dimensions do not match the transition tensor");
}

// One-hot transitions of the tie-broken optimal predecessors (gamma == 0).
SoftDtwResult hard_forward(const CostMatrix& C) {
  const Index m = C.rows(), n = C.cols();
  Matrix V(m, n);
  SoftDtwResult out;
  out.transitions.rows = m;
  out.transitions.cols = n;
  out.transitions.gamma = 0.0;
  out.transitions.data.assign(static_cast<std::size_t>(m * n * 3), 0.0);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == 0 && j == 0) {
        V(0, 0) = C(0, 0);
        out.transitions.p(0, 0, 1) = 1.0;
      } else if (i == 0) {
        V(0, j) = C(0, j) + V(0, j - 1);
        out.transitions.p(0, j, 0) = 1.0;
      } else if (j == 0) {
        V(i, 0) = C(i, 0) + V(i - 1, 0);
        out.transitions.p(i, 0, 2) = 1.0;
      } else {
        const double pred[3] = {V(i, j - 1), V(i - 1, j - 1), V(i - 1, j)};
        int best = 0;
        if (pred[1] < pred[best]) best = 1;
        if (pred[2] < pred[best]) best = 2;
        V(i, j) = C(i, j) + pred[best];
        out.transitions.p(i, j, best) = 1.0;
      }
    }
  }
  out.value = V(m - 1, n - 1);
  return out;
}

// Shared backward recursion of Algorithm 2 over zero-padded tables.
ExpectedAlignment backward_marginals(const TransitionTensor& t) {
  const Index m = t.rows, n = t.cols;
  // Padded (m+2) x (n+2) tables, logical cells at 1..m, 1..n. The virtual
  // terminal cell (m+1, n+1) has E = 1 and a diagonal-only transition.
  const Index pr = m + 2, pc = n + 2;
  std::vector<double> E(static_cast<std::size_t>(pr * pc), 0.0);
  std::vector<double> P(static_cast<std::size_t>(pr * pc * 3), 0.0);
  auto e = [&](Index i, Index j) -> double& {
    return E[static_cast<std::size_t>(i * pc + j)];
  };
  auto p = [&](Index i, Index j, int k) -> double& {
    return P[static_cast<std::size_t>((i * pc + j) * 3 + k)];
  };
  for (Index i = 1; i <= m; ++i)
    for (Index j = 1; j <= n; ++j)
      for (int k = 0; k < 3; ++k) p(i, j, k) = t.p(i - 1, j - 1, k);
  e(m + 1, n + 1) = 1.0;
  p(m + 1, n + 1, 1) = 1.0;

  for (Index j = n; j >= 1; --j)
    for (Index i = m; i >= 1; --i)
      e(i, j) = p(i, j + 1, 0) * e(i, j + 1) +
                p(i + 1, j + 1, 1) * e(i + 1, j + 1) +
                p(i + 1, j, 2) * e(i + 1, j);

  ExpectedAlignment out(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = e(i + 1, j + 1);
  return out;
}

} // namespace

HardDtwResult hard_dtw(const CostMatrix& C) {
  check_cost(C);
  const Index m = C.rows(), n = C.cols();
  Matrix V(m, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == 0 && j == 0)
        V(0, 0) = C(0, 0);
      else if (i == 0)
        V(0, j) = C(0, j) + V(0, j - 1);
      else if (j == 0)
        V(i, 0) = C(i, 0) + V(i - 1, 0);
      else
        V(i, j) = C(i, j) + std::min({V(i, j - 1), V(i - 1, j - 1), V(i - 1, j)});
    }
  }

  AlignmentMatrix path = AlignmentMatrix::Zero(m, n);
  Index i = m - 1, j = n - 1;
  path(i, j) = 1.0;
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double pred[3] = {V(i, j - 1), V(i - 1, j - 1), V(i - 1, j)};
      int best = 0;
      if (pred[1] < pred[best]) best = 1;
      if (pred[2] < pred[best]) best = 2;
      if (best == 0)
        --j;
      else if (best == 1)
        --i, --j;
      else
        --i;
    }
    path(i, j) = 1.0;
  }
  return {V(m - 1, n - 1), std::move(path)};
}

SoftDtwResult soft_dtw_forward(const CostMatrix& C, double gamma) {
  check_cost(C);
  if (!(gamma >= 0.0))
    throw std::invalid_argument("gamma must be non-negative");
  if (gamma == 0.0) return hard_forward(C);

  const Index m = C.rows(), n = C.cols();
  Matrix V(m, n);
  SoftDtwResult out;
  out.transitions.rows = m;
  out.transitions.cols = n;
  out.transitions.gamma = gamma;
  out.transitions.data.assign(static_cast<std::size_t>(m * n * 3), 0.0);
  TransitionTensor& P = out.transitions;

  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      // Border cells keep only in-grid predecessors instead of carrying
      // the infinite border values of the textbook recursion.
      if (i == 0 && j == 0) {
        V(0, 0) = C(0, 0);
        P.p(0, 0, 1) = 1.0;
      } else if (i == 0) {
        V(0, j) = C(0, j) + V(0, j - 1);
        P.p(0, j, 0) = 1.0;
      } else if (j == 0) {
        V(i, 0) = C(i, 0) + V(i - 1, 0);
        P.p(i, 0, 2) = 1.0;
      } else {
        const double l = V(i, j - 1), d = V(i - 1, j - 1), u = V(i - 1, j);
        const double lo = std::min({l, d, u});
        const double wl = std::exp(-(l - lo) / gamma);
        const double wd = std::exp(-(d - lo) / gamma);
        const double wu = std::exp(-(u - lo) / gamma);
        const double sum = wl + wd + wu;
        V(i, j) = C(i, j) + lo - gamma * std::log(sum);
        P.p(i, j, 0) = wl / sum;
        P.p(i, j, 1) = wd / sum;
        P.p(i, j, 2) = wu / sum;
      }
    }
  }
  out.value = V(m - 1, n - 1);
  return out;
}

ExpectedAlignment expected_alignment(const TransitionTensor& transitions) {
  check_transitions(transitions);
  return backward_marginals(transitions);
}

DirectionalDerivative directional_derivative(const TransitionTensor& transitions,
                                             const Matrix& Z) {
  check_transitions(transitions);
  check_same_shape(transitions, Z, "Z");
  if (!all_finite(Z)) throw std::invalid_argument("Z has non-finite entries");
  const Index m = transitions.rows, n = transitions.cols;
  const TransitionTensor& P = transitions;

  Matrix vdot(m, n);
  auto at = [&](Index i, Index j) { return (i < 0 || j < 0) ? 0.0 : vdot(i, j); };
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      vdot(i, j) = Z(i, j) + P.p(i, j, 0) * at(i, j - 1) +
                   P.p(i, j, 1) * at(i - 1, j - 1) + P.p(i, j, 2) * at(i - 1, j);
    }
  }
  return {vdot(m - 1, n - 1), std::move(vdot)};
}

Matrix hessian_product(const TransitionTensor& transitions, const Matrix& vdot,
                       const ExpectedAlignment& E, const Matrix& Z) {
  check_transitions(transitions);
  check_same_shape(transitions, vdot, "vdot");
  check_same_shape(transitions, E, "E");
  check_same_shape(transitions, Z, "Z");
  if (!(transitions.gamma > 0.0))
    throw std::invalid_argument(
        "hessian_product requires transitions built with gamma > 0");
  const Index m = transitions.rows, n = transitions.cols;
  const double gamma = transitions.gamma;

  // Padded tables as in backward_marginals; Pdot vanishes on the padding
  // (the virtual terminal transition is constant).
  const Index pc = n + 2;
  std::vector<double> Epad(static_cast<std::size_t>((m + 2) * pc), 0.0);
  std::vector<double> Edot(static_cast<std::size_t>((m + 2) * pc), 0.0);
  std::vector<double> Pd(static_cast<std::size_t>((m + 2) * pc * 3), 0.0);
  std::vector<double> Ppad(static_cast<std::size_t>((m + 2) * pc * 3), 0.0);
  auto epad = [&](Index i, Index j) -> double& {
    return Epad[static_cast<std::size_t>(i * pc + j)];
  };
  auto edot = [&](Index i, Index j) -> double& {
    return Edot[static_cast<std::size_t>(i * pc + j)];
  };
  auto pdot = [&](Index i, Index j, int k) -> double& {
    return Pd[static_cast<std::size_t>((i * pc + j) * 3 + k)];
  };
  auto ppad = [&](Index i, Index j, int k) -> double& {
    return Ppad[static_cast<std::size_t>((i * pc + j) * 3 + k)];
  };
  for (Index i = 1; i <= m; ++i) {
    for (Index j = 1; j <= n; ++j) {
      epad(i, j) = E(i - 1, j - 1);
      for (int k = 0; k < 3; ++k) ppad(i, j, k) = transitions.p(i - 1, j - 1, k);
    }
  }
  epad(m + 1, n + 1) = 1.0;
  ppad(m + 1, n + 1, 1) = 1.0;

  auto vd = [&](Index i, Index j) {
    return (i < 1 || j < 1) ? 0.0 : vdot(i - 1, j - 1);
  };

  for (Index j = n; j >= 1; --j) {
    for (Index i = m; i >= 1; --i) {
      const double s = ppad(i, j, 0) * vd(i, j - 1) +
                       ppad(i, j, 1) * vd(i - 1, j - 1) +
                       ppad(i, j, 2) * vd(i - 1, j);
      // d(softmax)/dC in the direction of Z; the 1/gamma makes this the
      // derivative of the transitions themselves, so Edot is the true
      // Hessian-vector product at every gamma.
      pdot(i, j, 0) = ppad(i, j, 0) * (s - vd(i, j - 1)) / gamma;
      pdot(i, j, 1) = ppad(i, j, 1) * (s - vd(i - 1, j - 1)) / gamma;
      pdot(i, j, 2) = ppad(i, j, 2) * (s - vd(i - 1, j)) / gamma;
      edot(i, j) = pdot(i, j + 1, 0) * epad(i, j + 1) +
                   ppad(i, j + 1, 0) * edot(i, j + 1) +
                   pdot(i + 1, j + 1, 1) * epad(i + 1, j + 1) +
                   ppad(i + 1, j + 1, 1) * edot(i + 1, j + 1) +
                   pdot(i + 1, j, 2) * epad(i + 1, j) +
                   ppad(i + 1, j, 2) * edot(i + 1, j);
    }
  }

  Matrix out(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = edot(i + 1, j + 1);
  return out;
}

AlignmentCount alignment_count(Index m, Index n) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("alignment_count requires m >= 1 and n >= 1");

  // Two-row exact Delannoy recurrence D(i,j) = D(i-1,j) + D(i,j-1) + D(i-1,j-1).
  std::vector<BigInt> prev(static_cast<std::size_t>(n), 1), cur(static_cast<std::size_t>(n));
  for (Index i = 1; i < m; ++i) {
    cur[0] = 1;
    for (Index j = 1; j < n; ++j)
      cur[static_cast<std::size_t>(j)] = prev[static_cast<std::size_t>(j)] +
                                         cur[static_cast<std::size_t>(j - 1)] +
                                         prev[static_cast<std::size_t>(j - 1)];
    std::swap(prev, cur);
  }

  // The same recurrence in log space is the soft-DTW forward pass on a
  // zero cost matrix at gamma = 1, whose transitions are exactly the
  // count ratios of Algorithm 5 -- finite at any grid size.
  SoftDtwResult soft = soft_dtw_forward(Matrix::Zero(m, n), 1.0);
  return {prev[static_cast<std::size_t>(n - 1)], std::move(soft.transitions)};
}

MeanCostResult mean_cost(const CostMatrix& C) {
  check_cost(C);
  SoftDtwResult uniform = soft_dtw_forward(Matrix::Zero(C.rows(), C.cols()), 1.0);
  DirectionalDerivative dd = directional_derivative(uniform.transitions, C);
  return {dd.value, backward_marginals(uniform.transitions)};
}

} // namespace tsdiv
