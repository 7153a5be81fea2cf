#pragma once

// Away-step Frank-Wolfe over the standard simplex with exact line search.
// The linear subproblem over the simplex is a vertex pick; ties go to the
// lowest index. The Frank-Wolfe gap <grad, w - e_s> certifies suboptimality.

#include "merit/core.hpp"

#include <cmath>
#include <functional>

namespace merit {

struct DualPoint {
  double value = 0.0;
  Vector gradient;
  Vector maximizer;  // primal point attached to these weights
  std::size_t inner_iterations = 0;
  bool inner_converged = true;
};

using DualOracle = std::function<DualPoint(const SimplexWeights&)>;

struct SimplexMinimum {
  SimplexWeights weights;
  DualPoint at;
  double gap = 0.0;
  std::size_t iterations = 0;
  std::size_t oracle_calls = 0;
  bool converged = false;
};

namespace detail {

inline SimplexWeights step_weights(const Vector& w, const Vector& d, double alpha) {
  Vector v = (w + alpha * d).cwiseMax(0.0);
  return SimplexWeights(v / v.sum());
}

}  // namespace detail

inline SimplexMinimum minimize_over_simplex(const DualOracle& oracle, Index m, double gap_tol,
                                            std::size_t max_iter) {
  SimplexMinimum out;
  out.weights = SimplexWeights::barycenter(m);
  out.at = oracle(out.weights);
  out.oracle_calls = 1;
  const double line_tol = 0.1 * gap_tol;

  for (;;) {
    const Vector& w = out.weights.values();
    const Vector& grad = out.at.gradient;
    const double inner = grad.dot(w);

    Index s = 0;
    for (Index i = 1; i < m; ++i) {
      if (grad[i] < grad[s]) s = i;
    }
    Index a = -1;
    for (Index i = 0; i < m; ++i) {
      if (w[i] > 0.0 && (a < 0 || grad[i] > grad[a])) a = i;
    }
    const double fw_gap = inner - grad[s];
    const double away_gap = grad[a] - inner;
    out.gap = std::max(fw_gap, 0.0);
    if (fw_gap <= gap_tol) {
      out.converged = true;
      break;
    }
    if (out.iterations >= max_iter) break;
    ++out.iterations;

    Vector d;
    double alpha_max;
    bool away = false;
    if (fw_gap >= away_gap) {
      d = -w;
      d[s] += 1.0;
      alpha_max = 1.0;
    } else {
      d = w;
      d[a] -= 1.0;
      alpha_max = w[a] / (1.0 - w[a]);
      away = true;
    }

    // Exact line search: root of psi'(alpha) = <grad phi(w + alpha d), d>.
    auto eval_at = [&](double alpha) {
      SimplexWeights trial = detail::step_weights(w, d, alpha);
      if (away && alpha == alpha_max) {
        Vector v = trial.values();
        v[a] = 0.0;
        trial = SimplexWeights(v / v.sum());
      }
      DualPoint pt = oracle(trial);
      ++out.oracle_calls;
      const double slope = pt.gradient.dot(d);
      return std::make_tuple(std::move(trial), std::move(pt), slope);
    };

    double lo = 0.0, f_lo = grad.dot(d);
    auto [w_hi, p_hi, f_hi] = eval_at(alpha_max);
    double hi = alpha_max;
    SimplexWeights best_w = w_hi;
    DualPoint best_p = p_hi;
    if (f_hi > 0.0 && f_lo < 0.0) {
      for (int k = 0; k < 80; ++k) {
        const double c = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        auto [w_c, p_c, f_c] = eval_at(c);
        best_w = w_c;
        best_p = p_c;
        if (std::abs(f_c) <= line_tol || std::abs(hi - lo) <= 1e-15 * alpha_max) break;
        if (f_c * f_hi < 0.0) {
          lo = hi;
          f_lo = f_hi;
        } else {
          f_lo *= 0.5;
        }
        hi = c;
        f_hi = f_c;
      }
    }
    if (!std::isfinite(best_p.value)) throw Error(ErrorCode::InvalidArgument, "dual objective is not finite");
    // Never accept a step that increases the objective beyond rounding.
    if (best_p.value > out.at.value + 1e-14 * (1.0 + std::abs(out.at.value))) break;
    out.weights = std::move(best_w);
    out.at = std::move(best_p);
  }
  return out;
}

}  // namespace merit
