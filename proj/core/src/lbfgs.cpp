#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "tsdiv/barycenter.hpp"

namespace tsdiv {

namespace {

constexpr int kHistory = 10;
constexpr double kWolfeC1 = 1e-4;
constexpr double kWolfeC2 = 0.9;
constexpr int kMaxLineSearchSteps = 50;

struct Pair {
  Vector s, y;
  double rho;
};

// Two-loop recursion; falls back to steepest descent with unit scaling
// when no curvature pairs are stored.
Vector lbfgs_direction(const std::deque<Pair>& mem, const Vector& grad) {
  Vector q = -grad;
  if (mem.empty()) return q;
  std::vector<double> alpha(mem.size());
  for (std::size_t idx = mem.size(); idx-- > 0;) {
    alpha[idx] = mem[idx].rho * mem[idx].s.dot(q);
    q -= alpha[idx] * mem[idx].y;
  }
  const Pair& last = mem.back();
  q *= last.s.dot(last.y) / last.y.squaredNorm();
  for (std::size_t idx = 0; idx < mem.size(); ++idx) {
    const double beta = mem[idx].rho * mem[idx].y.dot(q);
    q += (alpha[idx] - beta) * mem[idx].s;
  }
  return q;
}

struct Eval {
  double f;
  double dphi; // directional derivative along the search direction
};

} // namespace

MinimizeResult minimize(const Objective& objective, const Matrix& x0,
                        int max_iters, double grad_tol) {
  if (!all_finite(x0)) throw std::invalid_argument("x0 has non-finite entries");
  const Index m = x0.rows(), d = x0.cols();
  const Index dim = m * d;

  auto as_matrix = [&](const Vector& v) {
    return Matrix(Eigen::Map<const Matrix>(v.data(), m, d));
  };
  Matrix grad_buf(m, d);
  auto eval = [&](const Vector& x, Vector& grad_out) {
    const double f = objective(as_matrix(x), grad_buf);
    grad_out = Eigen::Map<const Vector>(grad_buf.data(), dim);
    return f;
  };

  Vector x = Eigen::Map<const Vector>(x0.data(), dim);
  Vector grad(dim);
  double f = eval(x, grad);
  if (!std::isfinite(f) || !grad.allFinite())
    throw std::invalid_argument("objective is not finite at x0");

  MinimizeResult result;
  result.trace.push_back(f);

  std::deque<Pair> mem;
  int iter = 0;
  bool ls_failed = false;

  while (iter < max_iters && grad.lpNorm<Eigen::Infinity>() > grad_tol) {
    Vector dir = lbfgs_direction(mem, grad);
    double dphi0 = grad.dot(dir);
    if (!(dphi0 < 0.0)) { // not a descent direction; reset memory
      mem.clear();
      dir = -grad;
      dphi0 = grad.dot(dir);
      if (!(dphi0 < 0.0)) break;
    }

    // Strong Wolfe line search (bracket + zoom).
    const double f0 = f;
    double alpha_prev = 0.0, f_prev = f0;
    double alpha = (iter == 0 && mem.empty())
                       ? std::min(1.0, 1.0 / std::max(1e-12, dir.lpNorm<Eigen::Infinity>()))
                       : 1.0;
    double lo = 0.0, hi = -1.0, f_lo = f0, dphi_lo = dphi0;
    bool bracketed = false, accepted = false;
    Vector x_new(dim), grad_new(dim);
    double f_new = f0;

    auto phi = [&](double a) -> Eval {
      x_new = x + a * dir;
      f_new = eval(x_new, grad_new);
      return {f_new, grad_new.dot(dir)};
    };

    for (int ls = 0; ls < kMaxLineSearchSteps; ++ls) {
      if (!bracketed) {
        Eval e = phi(alpha);
        if (!std::isfinite(e.f) || e.f > f0 + kWolfeC1 * alpha * dphi0 ||
            (ls > 0 && e.f >= f_prev)) {
          lo = alpha_prev;
          f_lo = f_prev;
          dphi_lo = 0.0; // recomputed lazily inside zoom when needed
          hi = alpha;
          bracketed = true;
        } else if (std::abs(e.dphi) <= -kWolfeC2 * dphi0) {
          accepted = true;
          break;
        } else if (e.dphi >= 0.0) {
          lo = alpha;
          f_lo = e.f;
          dphi_lo = e.dphi;
          hi = alpha_prev;
          bracketed = true;
        } else {
          alpha_prev = alpha;
          f_prev = e.f;
          alpha *= 2.0;
          continue;
        }
        (void)dphi_lo;
        continue;
      }
      // zoom: bisection on [lo, hi]
      alpha = 0.5 * (lo + hi);
      if (std::abs(hi - lo) < 1e-16 * std::max(1.0, std::abs(lo))) break;
      Eval e = phi(alpha);
      if (!std::isfinite(e.f) || e.f > f0 + kWolfeC1 * alpha * dphi0 || e.f >= f_lo) {
        hi = alpha;
      } else {
        if (std::abs(e.dphi) <= -kWolfeC2 * dphi0) {
          accepted = true;
          break;
        }
        if (e.dphi * (hi - lo) >= 0.0) hi = lo;
        lo = alpha;
        f_lo = e.f;
      }
    }

    if (!accepted && !(f_new < f0 && std::isfinite(f_new))) {
      ls_failed = true; // keep the best iterate found so far
      break;
    }

    const Vector s = x_new - x;
    const Vector y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      mem.push_back({s, y, 1.0 / sy});
      if (mem.size() > kHistory) mem.pop_front();
    }

    x.swap(x_new);
    grad.swap(grad_new);
    f = f_new;
    result.trace.push_back(f);
    ++iter;
  }

  result.x = as_matrix(x);
  result.value = f;
  result.iterations = iter;
  result.line_search_failed = ls_failed;
  return result;
}

} // namespace tsdiv
