#pragma once

// Strongly convex inner problems required by the dual evaluations, solved by
// proximal gradient with backtracking, plus a brute-force grid reference for
// the primal max-min definitions on low-dimensional problems.

#include "merit/config.hpp"
#include "merit/problem.hpp"
#include "merit/prox.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace merit {

struct InnerSolution {
  Vector point;
  double value = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;  // filled when requested
};

namespace detail {

struct CompositeModel {
  std::function<double(const Vector&)> smooth;
  std::function<Vector(const Vector&)> gradient;
  std::function<double(const Vector&)> nonsmooth;
  std::function<Vector(const Vector&, double)> prox;  // includes the indicator of S
};

inline double unbounded_threshold(const FeasibleSet& set) {
  const auto box = set.bounding_box();
  return 1e6 * (1.0 + (box ? box->diameter() : 0.0));
}

inline InnerSolution proximal_gradient(const CompositeModel& model, Vector y, double step,
                                       const InnerSolveConfig& cfg, const FeasibleSet& set,
                                       bool record_trace) {
  cfg.validate();
  const double limit = unbounded_threshold(set);
  const auto* bt = std::get_if<Backtracking>(&cfg.step_rule);
  if (const auto* fixed = std::get_if<FixedStep>(&cfg.step_rule)) step = fixed->step;

  InnerSolution sol;
  double s_y = model.smooth(y);
  if (record_trace) sol.objective_trace.push_back(s_y + model.nonsmooth(y));

  for (std::size_t k = 0; k < cfg.max_iter; ++k) {
    const Vector grad = model.gradient(y);
    Vector next;
    double s_next = 0.0;
    bool first_try = true;
    for (;;) {
      next = model.prox(y - step * grad, step);
      s_next = model.smooth(next);
      if (!bt) break;
      const Vector d = next - y;
      if (s_next <= s_y + grad.dot(d) + (bt->c / step) * d.squaredNorm() + 1e-15 * std::abs(s_y)) break;
      step *= bt->beta;
      first_try = false;
      if (step < 1e-300) break;
    }
    const double residual = (next - y).norm() / step;
    if (!std::isfinite(residual) || next.norm() > limit) {
      throw Error(ErrorCode::Unbounded, "inner iterates diverged beyond the unboundedness threshold");
    }
    y = std::move(next);
    s_y = s_next;
    sol.residual = residual;
    if (record_trace) sol.objective_trace.push_back(s_y + model.nonsmooth(y));
    if (residual <= cfg.tol) {
      sol.converged = true;
      break;
    }
    ++sol.iterations;
    if (bt && first_try) step /= bt->beta;
  }
  sol.value = s_y + model.nonsmooth(y);
  sol.point = std::move(y);
  return sol;
}

inline double weighted_lipschitz(const MultiobjectiveProblem& p, const SimplexWeights& w, bool& known) {
  double total = 0.0;
  known = true;
  for (Index i = 0; i < p.objective_count(); ++i) {
    if (w[i] <= 0.0 || p.objective(i).f.is_zero) continue;
    const auto& lip = p.facts(i).lip;
    if (!lip) {
      known = false;
      continue;
    }
    total += w[i] * *lip;
  }
  return total;
}

inline CompositeModel weighted_model(const MultiobjectiveProblem& p, const SimplexWeights& w,
                                     const InnerSolveConfig& cfg) {
  CompositeModel model;
  model.smooth = [&p, w](const Vector& y) {
    double s = 0.0;
    for (Index i = 0; i < p.objective_count(); ++i) {
      if (w[i] > 0.0 && !p.objective(i).f.is_zero) s += w[i] * p.objective(i).f.eval(y);
    }
    return s;
  };
  model.gradient = [&p, w](const Vector& y) {
    Vector g = Vector::Zero(y.size());
    for (Index i = 0; i < p.objective_count(); ++i) {
      if (w[i] > 0.0 && !p.objective(i).f.is_zero) g += w[i] * p.objective(i).f.gradient(y);
    }
    return g;
  };
  model.nonsmooth = [&p, w](const Vector& y) {
    double s = 0.0;
    for (Index i = 0; i < p.objective_count(); ++i) {
      if (w[i] > 0.0) s += w[i] * p.objective(i).g.value(y);
    }
    return s;
  };
  auto terms = convex_terms(p);
  model.prox = [&p, w, terms, cfg](const Vector& v, double t) {
    return weighted_sum_prox(terms, w, v, t, p.feasible_set(), &cfg).point;
  };
  return model;
}

inline void require_convex(const MultiobjectiveProblem& p, const char* what) {
  if (!p.all_F_convex()) {
    throw Error(ErrorCode::ConvexityRequired, std::string(what) + " needs every F_i declared convex");
  }
}

}  // namespace detail

/// argmin_{y in S} sum_i w_i F_i(y) + (ell/2)|center - y|^2 by proximal gradient.
/// The smooth part carries the quadratic; the prox part is the weighted sum
/// of g_i plus the indicator of S. Starts at project(center).
inline InnerSolution solve_regularized_weighted(const MultiobjectiveProblem& p, const SimplexWeights& weights,
                                                const Vector& center, double ell, const InnerSolveConfig& cfg,
                                                bool record_trace = false) {
  if (!(ell > 0.0)) throw Error(ErrorCode::InvalidArgument, "ell must be positive");
  detail::require_convex(p, "solve_regularized_weighted");
  auto model = detail::weighted_model(p, weights, cfg);
  auto smooth = model.smooth;
  auto grad = model.gradient;
  model.smooth = [smooth, center, ell](const Vector& y) { return smooth(y) + 0.5 * ell * (center - y).squaredNorm(); };
  model.gradient = [grad, center, ell](const Vector& y) -> Vector { return grad(y) + ell * (y - center); };

  bool known = false;
  const double lip = detail::weighted_lipschitz(p, weights, known);
  const double step = 1.0 / (ell + (known ? lip : 0.0));
  return detail::proximal_gradient(model, p.feasible_set().project(center), step, cfg, p.feasible_set(),
                                   record_trace);
}

/// Global minimizer of sum_i w_i F_i over S for convex problems. Throws
/// Unbounded when the iterates run past 1e6 * (1 + diam(bounding box)).
inline InnerSolution solve_weighted_scalarization(const MultiobjectiveProblem& p, const SimplexWeights& weights,
                                                  const InnerSolveConfig& cfg, const Vector* start = nullptr) {
  detail::require_convex(p, "solve_weighted_scalarization");
  auto model = detail::weighted_model(p, weights, cfg);
  bool known = false;
  const double lip = detail::weighted_lipschitz(p, weights, known);
  const double step = (known && lip > 0.0) ? 1.0 / lip : 1.0;
  Vector y0 = start ? *start : Vector::Zero(p.dimension());
  if (!start) {
    if (const auto box = p.feasible_set().bounding_box()) y0 = box->center();
  }
  return detail::proximal_gradient(model, p.feasible_set().project(y0), step, cfg, p.feasible_set(), false);
}

// --- grid reference ----------------------------------------------------------

struct GridOracleResult {
  double value = 0.0;
  Vector maximizer;
  double slack = 0.0;    // local Lipschitz estimate times a cell diagonal
  double spacing = 0.0;  // largest axis spacing
  std::size_t points = 0;
};

/// max over grid points y of S intersected with the bounding box (plus y = x)
/// of min_i of the primal integrand:
///   plain:      F_i(x) - F_i(y) - (ell/2)|x - y|^2
///   linearized: grad f_i(x)^T (x - y) + g_i(x) - g_i(y) - (ell/2)|x - y|^2
inline GridOracleResult grid_oracle_maxmin(const MultiobjectiveProblem& p, const Vector& x, double ell,
                                           bool linearized, std::size_t points_per_axis) {
  const Index n = p.dimension();
  if (n > 3) throw Error(ErrorCode::DimensionTooLarge, "grid oracle supports n <= 3");
  if (!(ell >= 0.0)) throw Error(ErrorCode::InvalidArgument, "ell must be nonnegative");
  const auto box = p.feasible_set().bounding_box();
  if (!box) throw Error(ErrorCode::UnsupportedProblem, "grid oracle needs a bounding box");
  if (points_per_axis < 2) throw Error(ErrorCode::InvalidArgument, "grid needs >= 2 points per axis");

  const Index m = p.objective_count();
  Vector Fx(m), gx(m);
  Matrix J;
  for (Index i = 0; i < m; ++i) {
    Fx[i] = p.value(i, x);
    gx[i] = p.objective(i).g.value(x);
  }
  if (linearized) J = p.smooth_jacobian(x);

  auto integrand = [&](const Vector& y) {
    double best = std::numeric_limits<double>::infinity();
    const double reg = 0.5 * ell * (x - y).squaredNorm();
    for (Index i = 0; i < m; ++i) {
      double v;
      if (linearized) {
        const double gy = p.objective(i).g.value(y);
        v = is_infinite_value(gy) ? -kInfinity : J.row(i).dot(x - y) + gx[i] - gy - reg;
      } else {
        const double Fy = p.value(i, y);
        v = is_infinite_value(Fy) ? -kInfinity : Fx[i] - Fy - reg;
      }
      best = std::min(best, v);
    }
    return best;
  };

  const auto k = static_cast<Index>(points_per_axis);
  Vector h(n);
  for (Index j = 0; j < n; ++j) h[j] = (box->hi[j] - box->lo[j]) / static_cast<double>(k - 1);
  Index total = 1;
  for (Index j = 0; j < n; ++j) total *= k;

  std::vector<double> values(static_cast<std::size_t>(total), -std::numeric_limits<double>::infinity());
  auto point_at = [&](Index flat) {
    Vector y(n);
    for (Index j = 0; j < n; ++j) {
      const Index c = flat % k;
      flat /= k;
      y[j] = c == k - 1 ? box->hi[j] : box->lo[j] + static_cast<double>(c) * h[j];
    }
    return y;
  };

  GridOracleResult out;
  out.value = integrand(x);
  out.maximizer = x;
  Index best_flat = -1;
  for (Index flat = 0; flat < total; ++flat) {
    const Vector y = point_at(flat);
    if (!p.feasible_set().contains(y)) continue;
    const double v = integrand(y);
    values[static_cast<std::size_t>(flat)] = v;
    ++out.points;
    if (v > out.value) {
      out.value = v;
      out.maximizer = y;
      best_flat = flat;
    }
  }
  out.spacing = h.maxCoeff();

  // Local slope around the grid argmax (x itself when nothing beat it).
  double slope = 0.0;
  auto coords_of = [&](Index flat) {
    std::vector<Index> c(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
      c[static_cast<std::size_t>(j)] = flat % k;
      flat /= k;
    }
    return c;
  };
  auto flat_of = [&](const std::vector<Index>& c) {
    Index f = 0;
    for (Index j = n - 1; j >= 0; --j) f = f * k + c[static_cast<std::size_t>(j)];
    return f;
  };
  std::vector<Index> anchor;
  if (best_flat >= 0) {
    anchor = coords_of(best_flat);
  } else {
    anchor.resize(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
      const double c = std::round((x[j] - box->lo[j]) / h[j]);
      anchor[static_cast<std::size_t>(j)] = std::clamp<Index>(static_cast<Index>(c), 0, k - 1);
    }
  }
  const Index radius = 2;
  std::vector<Index> lo(anchor), hi(anchor);
  for (Index j = 0; j < n; ++j) {
    lo[static_cast<std::size_t>(j)] = std::max<Index>(0, anchor[static_cast<std::size_t>(j)] - radius);
    hi[static_cast<std::size_t>(j)] = std::min<Index>(k - 1, anchor[static_cast<std::size_t>(j)] + radius);
  }
  std::vector<Index> c(lo);
  for (;;) {
    const double v = values[static_cast<std::size_t>(flat_of(c))];
    for (Index j = 0; j < n; ++j) {
      if (c[static_cast<std::size_t>(j)] + 1 > hi[static_cast<std::size_t>(j)]) continue;
      auto nb = c;
      ++nb[static_cast<std::size_t>(j)];
      const double w = values[static_cast<std::size_t>(flat_of(nb))];
      if (std::isfinite(v) && std::isfinite(w) && v > -kInfinity && w > -kInfinity) {
        slope = std::max(slope, std::abs(v - w) / h[j]);
      }
    }
    Index j = 0;
    for (; j < n; ++j) {
      auto& cj = c[static_cast<std::size_t>(j)];
      if (cj < hi[static_cast<std::size_t>(j)]) {
        ++cj;
        break;
      }
      cj = lo[static_cast<std::size_t>(j)];
    }
    if (j == n) break;
  }
  out.slack = std::max(slope * h.norm(), 1e-12);
  return out;
}

}  // namespace merit
